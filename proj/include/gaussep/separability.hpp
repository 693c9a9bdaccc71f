#pragma once

// Separability decision for two-mode Gaussian states: the mirror-reflection
// (partial transpose) condition is necessary and, for Gaussian states,
// sufficient. Separable verdicts carry a constructive certificate: a chain of
// local symplectics after which V − ½I ⪰ 0, i.e. the state is classical.

#include <optional>
#include <string_view>
#include <vector>

#include "gaussep/covariance.hpp"

namespace gaussep {

enum class VerdictKind { Separable, Entangled, Unphysical };

std::string_view to_string(VerdictKind kind) noexcept;

enum class CertificateBranch {
  Classical,     // V − ½I ⪰ 0 after reduction alone
  EqualRotation, // det C > 0: reciprocal x-scaling, common y-scaling
  DegenerateC,   // det C = 0: scaling diag(√2a, 1/√2a, √2b, 1/√2b)
};

std::string_view to_string(CertificateBranch branch) noexcept;

struct Kappa {
  double plus;         // κ₊
  double plus_prime;   // κ₊′
  double minus;        // κ₋
  double minus_prime;  // κ₋′
};

struct Certificate {
  CertificateBranch branch;
  bool mirrored;                        // built on ΛVΛ
  std::vector<LocalSymplectic> locals;  // in application order
  CovarianceMatrix final_v;             // locals applied to the (mirrored) input
  double classical_margin;              // λ_min(final_v) − ½
  double x = 1.0;                       // reciprocal scaling
  double y = 1.0;                       // common scaling
  double rotation_angle = 0.0;          // equal rotation diagonalizing final_v
  std::optional<Kappa> kappa;

  /// Product of `locals` (last applied leftmost).
  LocalSymplectic combined() const;
};

struct WitnessPair {
  Vec4 d{};
  Vec4 dp{};
  double sum;
  double separable_bound;
  double violation;  // separable_bound − sum
};

struct Verdict {
  VerdictKind kind;
  bool marginal;
  bool gaussian;  // false: input is moment data only, Separable means PPT-consistent
  double ppt_residual;
  double physical_margin;
  std::optional<Certificate> certificate;
  std::optional<WitnessPair> witness;
};

struct DecideOptions {
  double tol = kDefaultTol;
  bool gaussian = true;
  bool search_witness = true;
  int witness_budget = 2000;
};

Verdict decide(const CovarianceMatrix& v, const DecideOptions& opts = {});

/// Requires det C ≥ −tol (mirror-reflect first otherwise). Throws
/// PreconditionDetC or NotPhysical.
Certificate certify_separable(const CovarianceMatrix& v, double tol = kDefaultTol);

/// Certificate for V via its mirror image, for det C < 0 states that pass the
/// PPT test.
Certificate certify_mirrored(const CovarianceMatrix& v, double tol = kDefaultTol);

/// Best-effort search for (d, d') with dᵀVd + d'ᵀVd' below the separable
/// bound. Candidates are EPR-type pairs in standard-form coordinates, refined
/// by coordinate descent over at most `budget` evaluations and pulled back to
/// the input frame. Pairs are normalized to separable_bound = 2. An empty
/// result says nothing about separability.
std::optional<WitnessPair> find_witness(const CovarianceMatrix& v, int budget = 2000,
                                        double tol = kDefaultTol);

/// Uncertainty sum of X = q1+p1+q2+p2 and Y = q1−p1−q2+p2, which commute but
/// sum to at least 4 on separable states.
double check_commuting_pair_bound(const CovarianceMatrix& v);

}  // namespace gaussep
