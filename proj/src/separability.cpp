#include "gaussep/separability.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <limits>

namespace gaussep {

std::string_view to_string(VerdictKind kind) noexcept {
  switch (kind) {
    case VerdictKind::Separable: return "Separable";
    case VerdictKind::Entangled: return "Entangled";
    case VerdictKind::Unphysical: return "Unphysical";
  }
  return "Unknown";
}

std::string_view to_string(CertificateBranch branch) noexcept {
  switch (branch) {
    case CertificateBranch::Classical: return "classical";
    case CertificateBranch::EqualRotation: return "equal-rotation";
    case CertificateBranch::DegenerateC: return "degenerate-c";
  }
  return "unknown";
}

LocalSymplectic Certificate::combined() const {
  LocalSymplectic total;
  for (const LocalSymplectic& l : locals) total = l.after(total);
  return total;
}

namespace {

double classical_margin(const CovarianceMatrix& v) {
  return sym_eigen(v.matrix()).values[0] - 0.5;
}

Certificate finish(Certificate cert, const CovarianceMatrix& v) {
  cert.final_v = transform(v, cert.combined());
  cert.classical_margin = classical_margin(cert.final_v);
  const CovarianceMatrix& f = cert.final_v;
  cert.rotation_angle = 0.5 * std::atan2(2.0 * f(0, 2), f(0, 0) - f(2, 2));
  return cert;
}

}  // namespace

Certificate certify_separable(const CovarianceMatrix& v, double tol) {
  if (!is_physical_psd(v, tol).ok)
    throw Error(ErrorCode::NotPhysical, "certificate requires a physical covariance matrix");
  if (determinant(v.c()) < -tol * v.scale())
    throw Error(ErrorCode::PreconditionDetC, "det C < 0: mirror-reflect before certifying");

  StandardForm sf = to_standard_form(v, tol);
  Certificate cert{CertificateBranch::DegenerateC, false, {sf.to_standard}, v, 0.0,
                   1.0, 1.0, 0.0, std::nullopt};

  if (sf.c1 < 0.0 && sf.c2 < 0.0) {
    // π rotation on Bob's mode flips the sign of C.
    cert.locals.push_back({Mat2::identity(), -Mat2::identity()});
    sf.c1 = -sf.c1;
    sf.c2 = -sf.c2;
  }

  const double a = sf.a;
  const double b = sf.b;
  const double c1 = sf.c1;
  const double c2 = sf.c2;
  const double denom = c2 * a + c1 * b;

  if (c2 > 0.0 && denom > tol * v.scale()) {
    cert.branch = CertificateBranch::EqualRotation;
    const double x = std::pow((c1 * a + c2 * b) / denom, 0.25);
    const double x2 = x * x;
    const double qa = x2 * a + b / x2;  // q-plane diagonal sum
    const double pa = a / x2 + x2 * b;  // p-plane diagonal sum
    const double dq = x2 * a - b / x2;
    const double dp = a / x2 - x2 * b;
    const double g = std::sqrt(dq * dq + 4.0 * c1 * c1);
    const double gp = std::sqrt(dp * dp + 4.0 * c2 * c2);
    const double minus_q = qa - g;
    const double minus_p = pa - gp;
    if (!(minus_q > 0.0) || !(minus_p > 0.0))
      throw Error(ErrorCode::NotPhysical, "reduced form is not positive definite");
    const double y = std::pow(minus_p / minus_q, 0.25);
    const double y2 = y * y;

    cert.x = x;
    cert.y = y;
    cert.locals.push_back({squeeze2(x), squeeze2(1.0 / x)});
    cert.locals.push_back({squeeze2(y), squeeze2(y)});
    cert.kappa = Kappa{0.5 * y2 * (qa + g), 0.5 / y2 * (pa + gp), 0.5 * y2 * minus_q,
                       0.5 / y2 * minus_p};
  } else if (c2 > 0.0) {
    // The x-formula denominator vanishes only when C ≈ 0, where the reduced
    // form diag(a, a, b, b) is already classical.
    cert.branch = CertificateBranch::Classical;
  } else {
    cert.branch = CertificateBranch::DegenerateC;
    cert.locals.push_back({squeeze2(std::sqrt(2.0 * a)), squeeze2(std::sqrt(2.0 * b))});
  }
  return finish(std::move(cert), v);
}

Certificate certify_mirrored(const CovarianceMatrix& v, double tol) {
  Certificate cert = certify_separable(mirror_reflect(v), tol);
  cert.mirrored = true;
  return cert;
}

namespace {

using Pair = std::array<double, 8>;

Vec4 head(const Pair& u) { return {u[0], u[1], u[2], u[3]}; }
Vec4 tail(const Pair& u) { return {u[4], u[5], u[6], u[7]}; }

double separable_bound(const Vec4& d, const Vec4& dp) {
  return std::abs(d[0] * dp[1] - d[1] * dp[0]) + std::abs(d[2] * dp[3] - d[3] * dp[2]);
}

// Uncertainty sum rescaled so that the separable bound equals 2.
double normalized_sum(const Mat4& w, const Pair& u) {
  const Vec4 d = head(u);
  const Vec4 dp = tail(u);
  const double bound = separable_bound(d, dp);
  if (!(bound > 1e-12)) return std::numeric_limits<double>::infinity();
  return 2.0 * (bilinear(d, w, d) + bilinear(dp, w, dp)) / bound;
}

void normalize(Pair& u) {
  const double bound = separable_bound(head(u), tail(u));
  const double t = std::sqrt(2.0 / bound);
  for (double& x : u) x *= t;
}

}  // namespace

std::optional<WitnessPair> find_witness(const CovarianceMatrix& v, int budget, double tol) {
  StandardForm sf;
  try {
    sf = to_standard_form(v, tol);
  } catch (const Error&) {
    return std::nullopt;
  }
  const Mat4 l = block_diag(sf.to_standard.alice, sf.to_standard.bob);
  const Mat4 w = congruence(l, v.matrix());

  // EPR-type pairs (e1 ∓ e3, e2 ± e4) in standard-form coordinates.
  const std::array<Pair, 2> seeds{{{1, 0, -1, 0, 0, 1, 0, 1}, {1, 0, 1, 0, 0, 1, 0, -1}}};
  Pair best = seeds[0];
  double best_f = normalized_sum(w, best);
  int evals = 1;
  for (std::size_t k = 1; k < seeds.size(); ++k, ++evals) {
    const double f = normalized_sum(w, seeds[k]);
    if (f < best_f) {
      best_f = f;
      best = seeds[k];
    }
  }

  double step = 0.25;
  while (evals < budget && step > 1e-12) {
    bool improved = false;
    for (std::size_t i = 0; i < 8 && evals < budget; ++i) {
      for (double sign : {1.0, -1.0}) {
        if (evals >= budget) break;
        Pair trial = best;
        trial[i] += sign * step;
        const double f = normalized_sum(w, trial);
        ++evals;
        if (f < best_f) {
          best_f = f;
          best = trial;
          normalize(best);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  // Pull back: dᵀ(LVLᵀ)d = (Lᵀd)ᵀV(Lᵀd), and the mode-wise J forms are
  // unchanged by local symplectics.
  const Mat4 lt = l.transpose();
  Pair pulled{};
  const Vec4 d = lt * head(best);
  const Vec4 dp = lt * tail(best);
  for (std::size_t i = 0; i < 4; ++i) {
    pulled[i] = d[i];
    pulled[i + 4] = dp[i];
  }
  normalize(pulled);

  WitnessPair wp;
  wp.d = head(pulled);
  wp.dp = tail(pulled);
  const UncertaintySum u = uncertainty_sum(v, wp.d, wp.dp);
  wp.sum = u.sum;
  wp.separable_bound = u.separable_bound;
  wp.violation = u.separable_bound - u.sum;
  if (!(wp.violation > tol * v.scale())) return std::nullopt;
  return wp;
}

double check_commuting_pair_bound(const CovarianceMatrix& v) {
  const Vec4 d{1.0, 1.0, 1.0, 1.0};
  const Vec4 dp{1.0, -1.0, -1.0, 1.0};
  assert(bilinear(d, omega(), dp) == 0.0);
  return uncertainty_sum(v, d, dp).sum;
}

Verdict decide(const CovarianceMatrix& v, const DecideOptions& opts) {
  const double band = 10.0 * opts.tol * v.scale();
  const MarginCheck phys = is_physical_psd(v, opts.tol);
  const ResidualCheck ppt = ppt_invariant(v, opts.tol);

  Verdict out{VerdictKind::Unphysical, false, opts.gaussian, ppt.residual, phys.margin,
              std::nullopt, std::nullopt};
  if (!phys.ok) {
    out.marginal = std::abs(phys.margin) <= band;
    return out;
  }
  out.marginal = std::abs(ppt.residual) <= band;

  const bool det_c_nonnegative = determinant(v.c()) >= 0.0;
  if (!det_c_nonnegative && !ppt.ok) {
    out.kind = VerdictKind::Entangled;
    if (opts.search_witness) out.witness = find_witness(v, opts.witness_budget, opts.tol);
    return out;
  }

  out.kind = VerdictKind::Separable;
  try {
    out.certificate = det_c_nonnegative ? certify_separable(v, opts.tol)
                                        : certify_mirrored(v, opts.tol);
  } catch (const Error&) {
    // Only reachable inside the boundary band; the verdict stands, uncertified.
    out.marginal = true;
  }
  return out;
}

}  // namespace gaussep
