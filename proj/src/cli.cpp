#include "gaussep/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaussep/selftest.hpp"
#include "gaussep/separability.hpp"
#include "gaussep/state_file.hpp"
#include "gaussep/states.hpp"
#include "gaussep/wigner.hpp"

namespace gaussep {

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string path = "-";
  double tol = kDefaultTol;
  bool json = false;
  bool gaussian = true;
  bool witness = false;
  int witness_budget = 2000;
  std::uint64_t seed = 1;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GaussianState load_state(const CommonOptions& o, std::istream& in) {
  std::string text;
  if (o.path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(o.path);
    if (!f) throw InputError("cannot open " + o.path);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return parse_state_file(text, o.tol);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

json matrix_json(const Mat2& m) {
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

json vec_json(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

std::string vec_text(const Vec4& v) {
  return "[" + format_double(v[0]) + ", " + format_double(v[1]) + ", " + format_double(v[2]) +
         ", " + format_double(v[3]) + "]";
}

std::string mat2_text(const Mat2& m) {
  return "[[" + format_double(m(0, 0)) + ", " + format_double(m(0, 1)) + "], [" +
         format_double(m(1, 0)) + ", " + format_double(m(1, 1)) + "]]";
}

std::string verdict_label(const Verdict& v) {
  if (v.kind == VerdictKind::Separable && !v.gaussian) return "PPT-consistent";
  return std::string(to_string(v.kind));
}

int exit_code(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Separable: return kExitSeparable;
    case VerdictKind::Entangled: return kExitEntangled;
    case VerdictKind::Unphysical: return kExitUnphysical;
  }
  return kExitInputError;
}

json witness_json(const WitnessPair& w) {
  return {{"d", vec_json(w.d)},
          {"dp", vec_json(w.dp)},
          {"sum", w.sum},
          {"separable_bound", w.separable_bound},
          {"violation", w.violation}};
}

void print_witness_text(const WitnessPair& w, std::ostream& out) {
  out << "witness d: " << vec_text(w.d) << "\n"
      << "witness d': " << vec_text(w.dp) << "\n"
      << "witness sum: " << format_double(w.sum) << "\n"
      << "witness separable bound: " << format_double(w.separable_bound) << "\n"
      << "witness violation: " << format_double(w.violation) << "\n";
}

int cmd_check(const CommonOptions& o, std::istream& in, std::ostream& out) {
  const GaussianState st = load_state(o, in);
  DecideOptions d;
  d.tol = o.tol;
  d.gaussian = o.gaussian;
  d.search_witness = o.witness;
  d.witness_budget = o.witness_budget;
  const Verdict v = decide(st.cov, d);
  const Invariants inv = invariants(st.cov);

  if (o.json) {
    json j;
    j["verdict"] = verdict_label(v);
    j["kind"] = std::string(to_string(v.kind));
    j["marginal"] = v.marginal;
    j["gaussian"] = v.gaussian;
    j["invariants"] = {{"i1", inv.i1}, {"i2", inv.i2}, {"i3", inv.i3}, {"i4", inv.i4}};
    j["det_v"] = inv.detv;
    j["physical_margin"] = v.physical_margin;
    j["ppt_residual"] = v.ppt_residual;
    j["witness"] = v.witness ? witness_json(*v.witness) : json(nullptr);
    if (v.certificate) {
      const Certificate& c = *v.certificate;
      j["certificate"] = {{"branch", std::string(to_string(c.branch))},
                          {"mirrored", c.mirrored},
                          {"classical_margin", c.classical_margin}};
    } else {
      j["certificate"] = nullptr;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "verdict: " << verdict_label(v) << (v.marginal ? " (marginal)" : "") << "\n"
        << "I1 = det A: " << format_double(inv.i1) << "\n"
        << "I2 = det B: " << format_double(inv.i2) << "\n"
        << "I3 = det C: " << format_double(inv.i3) << "\n"
        << "I4 = tr(AJCJBJC^TJ): " << format_double(inv.i4) << "\n"
        << "det V: " << format_double(inv.detv) << "\n"
        << "physical margin: " << format_double(v.physical_margin) << "\n"
        << "ppt residual: " << format_double(v.ppt_residual) << "\n"
        << "marginal: " << (v.marginal ? "true" : "false") << "\n";
    if (v.certificate)
      out << "certificate: " << to_string(v.certificate->branch)
          << (v.certificate->mirrored ? " (mirrored)" : "")
          << ", classical margin " << format_double(v.certificate->classical_margin) << "\n";
    if (v.witness) print_witness_text(*v.witness, out);
    else if (o.witness && v.kind == VerdictKind::Entangled) out << "witness: none found\n";
  }
  return exit_code(v.kind);
}

int cmd_reduce(const CommonOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const GaussianState st = load_state(o, in);
  if (!is_physical_psd(st.cov, o.tol).ok) {
    err << "error: covariance matrix is unphysical\n";
    return kExitUnphysical;
  }
  const StandardForm sf = to_standard_form(st.cov, o.tol);
  const double error = standard_form_error(st.cov, sf);
  if (o.json) {
    json j = {{"a", sf.a},
              {"b", sf.b},
              {"c1", sf.c1},
              {"c2", sf.c2},
              {"alice", matrix_json(sf.to_standard.alice)},
              {"bob", matrix_json(sf.to_standard.bob)},
              {"reconstruction_error", error}};
    out << j.dump(2) << "\n";
  } else {
    out << "a: " << format_double(sf.a) << "\n"
        << "b: " << format_double(sf.b) << "\n"
        << "c1: " << format_double(sf.c1) << "\n"
        << "c2: " << format_double(sf.c2) << "\n"
        << "alice: " << mat2_text(sf.to_standard.alice) << "\n"
        << "bob: " << mat2_text(sf.to_standard.bob) << "\n"
        << "reconstruction error: " << format_double(error) << "\n";
  }
  return 0;
}

int cmd_witness(const CommonOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const GaussianState st = load_state(o, in);
  if (!is_physical_psd(st.cov, o.tol).ok) {
    err << "error: covariance matrix is unphysical\n";
    return kExitUnphysical;
  }
  const std::optional<WitnessPair> w = find_witness(st.cov, o.witness_budget, o.tol);
  if (o.json) {
    out << (w ? witness_json(*w) : json(nullptr)).dump(2) << "\n";
  } else if (w) {
    print_witness_text(*w, out);
  } else {
    out << "witness: none found\n";
  }
  return w ? kExitEntangled : kExitSeparable;
}

int cmd_wigner(const CommonOptions& o, const std::vector<double>& at, bool pt, std::istream& in,
               std::ostream& out) {
  const GaussianState st = load_state(o, in);
  const PhasePoint xi{at[0], at[1], at[2], at[3]};
  double value = 0.0;
  try {
    value = pt ? partial_transpose_eval(st, xi) : wigner_eval(st, xi);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  if (o.json)
    out << json({{"xi", vec_json(xi)}, {"partial_transpose", pt}, {"value", value}}).dump(2)
        << "\n";
  else
    out << format_double(value) << "\n";
  return 0;
}

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int cmd_generate(const std::string& name, const std::vector<std::string>& raw_params,
                 std::uint64_t seed, std::ostream& out) {
  std::map<std::string, double> params;
  for (const std::string& p : raw_params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw InputError("parameter must be key=value: " + p);
    try {
      std::size_t used = 0;
      const std::string value = p.substr(eq + 1);
      params[p.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw InputError("bad numeric parameter: " + p);
    }
  }

  std::optional<GaussianState> st;
  try {
    if (name == "vacuum") st = vacuum();
    else if (name == "thermal") st = thermal(param(params, "n1", 0.0), param(params, "n2", 0.0));
    else if (name == "tmsv") st = two_mode_squeezed(param(params, "r", 1.0));
    else if (name == "random-physical")
      st = random_physical(seed, param(params, "mixedness", 0.5));
    else if (name == "random-separable")
      st = random_separable(seed, static_cast<int>(param(params, "k", 3)));
    else throw InputError("unknown state name: " + name);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  out << serialize_state_file(*st);
  return 0;
}

int cmd_selftest(std::uint64_t samples, std::uint64_t seed, bool as_json, std::ostream& out) {
  const std::vector<SuiteResult> results = run_selftest({samples, seed});
  bool all = true;
  json j = json::array();
  for (const SuiteResult& r : results) {
    all = all && r.passed();
    if (as_json) {
      j.push_back({{"suite", r.name},
                   {"passed", r.passed()},
                   {"checked", r.checked},
                   {"skipped", r.skipped},
                   {"failures", r.failures},
                   {"worst", r.worst},
                   {"detail", r.detail}});
    } else {
      out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": checked " << r.checked
          << ", skipped " << r.skipped << ", failures " << r.failures << ", worst "
          << format_double(r.worst) << "\n";
      if (!r.detail.empty()) out << "  first counterexample: " << r.detail << "\n";
    }
  }
  if (as_json) out << j.dump(2) << "\n";
  return all ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOptions& o, bool with_path = true) {
  if (with_path) cmd->add_option("path", o.path, "state file, or - for stdin");
  cmd->add_option("--tol", o.tol, "tolerance, scaled by max(1, |V|_max)");
  cmd->add_flag("--json", o.json, "machine-readable report");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Separability of two-mode Gaussian states from covariance matrices", "gaussep"};
  app.require_subcommand(1);

  CommonOptions o;

  CLI::App* check = app.add_subcommand("check", "decide separable / entangled / unphysical");
  add_common(check, o);
  check->add_flag("--gaussian,!--no-gaussian", o.gaussian,
                  "input is a Gaussian state (default); otherwise moments only");
  check->add_flag("--witness", o.witness, "search for an entanglement witness pair");
  check->add_option("--witness-budget", o.witness_budget, "witness search evaluations");

  CLI::App* reduce = app.add_subcommand("reduce", "local standard form (a, b, c1, c2)");
  add_common(reduce, o);

  CLI::App* witness = app.add_subcommand("witness", "search for a violating (d, d') pair");
  add_common(witness, o);
  witness->add_option("--witness-budget", o.witness_budget, "witness search evaluations");

  std::vector<double> at;
  bool pt = false;
  CLI::App* wigner = app.add_subcommand("wigner", "evaluate the Wigner function");
  add_common(wigner, o);
  wigner->add_option("--at", at, "phase-space point q1 p1 q2 p2")->expected(4)->allow_extra_args(false)->required();
  wigner->add_flag("--pt", pt, "evaluate the partially transposed (mirrored) function");

  std::string name;
  std::vector<std::string> params;
  CLI::App* generate = app.add_subcommand("generate", "emit a state file");
  generate->add_option("name", name,
                       "vacuum | thermal | tmsv | random-physical | random-separable")
      ->required();
  generate->add_option("params", params, "key=value parameters (r, n1, n2, mixedness, k)");
  generate->add_option("--seed", o.seed, "random seed");

  std::uint64_t samples = 10000;
  CLI::App* selftest = app.add_subcommand("selftest", "run the property sweeps");
  selftest->add_option("--samples", samples, "samples per sweep");
  selftest->add_option("--seed", o.seed, "random seed");
  selftest->add_flag("--json", o.json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (*check) return cmd_check(o, in, out);
    if (*reduce) return cmd_reduce(o, in, out, err);
    if (*witness) return cmd_witness(o, in, out, err);
    if (*wigner) return cmd_wigner(o, at, pt, in, out);
    if (*generate) return cmd_generate(name, params, o.seed, out);
    if (*selftest) return cmd_selftest(samples, o.seed, o.json, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace gaussep
