#include "gaussep/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gaussep/sampling.hpp"
#include "gaussep/separability.hpp"
#include "gaussep/states.hpp"
#include "gaussep/wigner.hpp"

namespace gaussep {

namespace {

constexpr double kBand = 1e-8;

void record_failure(SuiteResult& r, const CovarianceMatrix& v, const std::string& what) {
  if (r.failures++ == 0) {
    std::ostringstream os;
    os.precision(17);
    os << what << " V=" << v.matrix();
    r.detail = os.str();
  }
}

SuiteResult uncertainty_equivalence(const SelftestOptions& opts) {
  SuiteResult r;
  r.name = "uncertainty-equivalence";
  for (std::uint64_t k = 0; k < opts.samples; ++k) {
    const CovarianceMatrix v = sample_mixed(opts.seed, k);
    const MarginCheck psd = is_physical_psd(v);
    const ResidualCheck inv = is_physical_invariant(v);
    if (std::abs(psd.margin) <= kBand || std::abs(inv.residual) <= kBand) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    if (psd.ok != inv.ok) record_failure(r, v, "psd/invariant disagree");
  }
  return r;
}

SuiteResult ppt_equivalence(const SelftestOptions& opts) {
  SuiteResult r;
  r.name = "ppt-equivalence";
  for (std::uint64_t k = 0; k < opts.samples; ++k) {
    const CovarianceMatrix v = sample_physical(opts.seed * 7919 + k);
    const MarginCheck reflected = ppt_psd(v);
    const MarginCheck tilde = ppt_psd_tilde(v);
    r.worst = std::max(r.worst, std::abs(reflected.margin - tilde.margin));
    if (reflected.ok != tilde.ok || std::abs(reflected.margin - tilde.margin) > 1e-12 * v.scale())
      record_failure(r, v, "mirrored and Ω̃ forms disagree");
    const ResidualCheck inv = ppt_invariant(v);
    if (std::abs(reflected.margin) <= kBand || std::abs(inv.residual) <= kBand) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    if (reflected.ok != inv.ok) record_failure(r, v, "ppt psd/invariant disagree");
  }
  return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

SuiteResult local_invariance(const SelftestOptions& opts) {
  SuiteResult r;
  r.name = "local-invariance";
  const std::uint64_t n = std::max<std::uint64_t>(10, opts.samples / 10);
  for (std::uint64_t k = 0; k < n; ++k) {
    const CovarianceMatrix v = sample_physical(opts.seed * 104729 + k);
    const CovarianceMatrix w = transform(v, random_local(opts.seed * 31 + k));
    const Invariants a = invariants(v);
    const Invariants b = invariants(w);
    const double worst = std::max({rel(b.i1, a.i1), rel(b.i2, a.i2), rel(b.i3, a.i3),
                                   rel(b.i4, a.i4), rel(b.detv, a.detv)});
    const double identity = std::abs(a.detv - (a.i1 * a.i2 + a.i3 * a.i3 - a.i4));
    r.worst = std::max(r.worst, worst);
    ++r.checked;
    if (worst > 1e-8 || identity > 1e-10 * v.scale()) record_failure(r, v, "invariant drift");
  }
  return r;
}

SuiteResult squeezed_closed_form(const SelftestOptions&) {
  SuiteResult r;
  r.name = "two-mode-squeezed";
  for (double sq : {0.1, 0.25, 0.5, 1.0, 2.0}) {
    const CovarianceMatrix v = two_mode_squeezed(sq).cov;
    const double s = std::sinh(2.0 * sq) * std::sinh(2.0 * sq);
    const double expected = -0.25 * s;
    const double got = ppt_invariant(v).residual;
    const double err = std::abs(got - expected) / std::abs(expected);
    r.worst = std::max(r.worst, err);
    ++r.checked;
    if (err > 1e-9 || std::abs(is_physical_invariant(v).residual) > 1e-9 * v.scale() ||
        decide(v, {kDefaultTol, true, false}).kind != VerdictKind::Entangled)
      record_failure(r, v, "two-mode squeezed closed form violated");
  }
  const Verdict vac = decide(vacuum().cov);
  ++r.checked;
  if (vac.kind != VerdictKind::Separable || !vac.marginal)
    record_failure(r, vacuum().cov, "vacuum is not separable-marginal");
  return r;
}

SuiteResult certificates(const SelftestOptions& opts) {
  SuiteResult r;
  r.name = "certificates";
  r.worst = std::numeric_limits<double>::infinity();
  const std::uint64_t n = std::max<std::uint64_t>(10, opts.samples / 10);
  for (std::uint64_t k = 0; k < n; ++k) {
    const CovarianceMatrix v = sample_nonnegative_det_c(opts.seed * 15485863 + k);
    ++r.checked;
    try {
      const Certificate cert = certify_separable(v);
      r.worst = std::min(r.worst, cert.classical_margin);
      bool locals_ok = true;
      for (const LocalSymplectic& l : cert.locals)
        locals_ok = locals_ok && is_symplectic(l.alice, 1e-10) && is_symplectic(l.bob, 1e-10);
      if (cert.classical_margin < -1e-9 || !locals_ok)
        record_failure(r, v, "unsound certificate");
    } catch (const Error& e) {
      record_failure(r, v, e.what());
    }
  }
  return r;
}

SuiteResult moments(const SelftestOptions& opts) {
  SuiteResult r;
  r.name = "monte-carlo-moments";
  const std::uint64_t n = std::clamp<std::uint64_t>(opts.samples * 100, 10000, 1000000);
  for (const GaussianState& st : {vacuum(), two_mode_squeezed(0.5)}) {
    const MomentEstimate est = sample_moments(st, n, opts.seed);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        ++r.checked;
        const double z = std::abs(est.cov(i, j) - st.cov(i, j)) / est.std_error(i, j);
        r.worst = std::max(r.worst, z);
        if (!(z <= 5.0)) record_failure(r, st.cov, "moment outside 5 standard errors");
      }
  }
  return r;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
  return {uncertainty_equivalence(opts), ppt_equivalence(opts), local_invariance(opts),
          squeezed_closed_form(opts),    certificates(opts),    moments(opts)};
}

}  // namespace gaussep
