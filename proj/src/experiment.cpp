#include "gaussdense/experiment.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <random>

#include <json.hpp>

#include "gaussdense/approx.hpp"
#include "gaussdense/error.hpp"
#include "gaussdense/io.hpp"
#include "gaussdense/operators.hpp"
#include "gaussdense/transform.hpp"
#include "gaussdense/wspace.hpp"

namespace gaussdense {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr std::array<std::string_view, 6> kSubcommands{"check-weights", "transform", "mollify",
                                                       "approximate", "witness", "check-window"};
constexpr int kProbeCount = 20;

[[noreturn]] void config_error(const std::string& msg) { fail(ErrorCode::ConfigError, msg); }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("bad value for '") + key + "': " + e.what());
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

WeightSpec parse_weight(const json& j, double halfwidth, const fs::path& base) {
  if (!j.is_object()) config_error("weight must be an object");
  const std::string kind_name = get_or<std::string>(j, "kind", "constant");
  WeightSpec w;
  const WeightKind kind = parse_weight_kind(kind_name);
  if (kind == WeightKind::Table) {
    if (!j.contains("csv")) config_error("table weight needs 'csv'");
    w = io::read_weight_csv(resolve(base, j.at("csv").get<std::string>()));
  } else {
    w = WeightSpec::preset(kind, get_or<std::vector<double>>(j, "params", {}), halfwidth);
  }
  if (get_or<double>(j, "offset", 0.0) != 0.0) w.offset += j.at("offset").get<double>();
  if (get_or<bool>(j, "reciprocal", false)) w = reciprocal_of(w);
  return w;
}

GaussianAtom parse_atom(const json& j) {
  return {get_or<double>(j, "alpha", 1.0), get_or<double>(j, "tau", 0.0)};
}

SignalSource parse_source(const json& j, const fs::path& base) {
  if (!j.is_object()) config_error("signal source must be an object");
  SignalSource s;
  if (j.contains("csv")) {
    s.kind = SignalSource::Kind::Csv;
    s.csv = resolve(base, j.at("csv").get<std::string>());
    return s;
  }
  if (j.contains("atoms")) {
    s.kind = SignalSource::Kind::Atoms;
    for (const json& a : j.at("atoms")) {
      s.atoms.push_back(parse_atom(a));
      s.coefficients.emplace_back(get_or<double>(a, "re", 1.0), get_or<double>(a, "im", 0.0));
    }
    if (s.atoms.empty()) config_error("'atoms' is empty");
    return s;
  }
  const std::string preset = get_or<std::string>(j, "preset", "gaussian");
  if (preset == "gaussian") {
    s.kind = SignalSource::Kind::Gaussian;
    s.atom = parse_atom(j);
  } else if (preset == "bump") {
    s.kind = SignalSource::Kind::Bump;
    s.center = get_or<double>(j, "center", 0.0);
    s.radius = get_or<double>(j, "radius", 1.0);
    if (!(s.radius > 0.0)) config_error("bump radius must be positive");
  } else if (preset == "zero") {
    s.kind = SignalSource::Kind::Zero;
  } else {
    config_error("unknown signal preset '" + preset + "'");
  }
  return s;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json envelope_json(const RegularityEnvelope& e) {
  return {{"C", e.c_w}, {"mu", e.mu_w}, {"regular", e.regular}, {"valid_up_to", e.valid_up_to}};
}

json analysis_json(const WeightSpec& w, const WeightAnalysis& a) {
  const NonDegeneracyReport& nd = a.nondegeneracy;
  return {{"weight", w.describe()},
          {"w_at_zero", a.w_at_zero},
          {"nondegeneracy",
           {{"epsilon", nd.epsilon}, {"sublevel_measure", nd.sublevel_measure}, {"window", nd.window}, {"passes", nd.passes}}},
          {"one_plus_envelope", envelope_json(a.one_plus_envelope)}};
}

std::string mmc_csv(const MmcCurve& c) {
  std::string out = "delta,M,log_M\n";
  for (std::size_t i = 0; i < c.deltas.size(); ++i)
    out += io::format_double(c.deltas[i]) + ',' + io::format_double(c.values[i]) + ',' + io::format_double(c.log_values[i]) + '\n';
  return out;
}

std::string dump(const json& j) { return j.dump(2) + '\n'; }

class Runner {
 public:
  Runner(const ExperimentConfig& cfg, const RunOptions& opt, fs::path out) : cfg_(cfg), opt_(opt), out_(std::move(out)) {}

  int run(std::string_view sub) {
    grid_.emplace(Grid::make(cfg_.halfwidth, cfg_.step));
    if (sub == "check-weights") return check_weights();
    const SpacePair sp = space(opt_.force);
    if (sub == "transform") return transform();
    if (sub == "mollify") return mollify(sp);
    if (sub == "approximate") return approximate(sp);
    if (sub == "witness") return witness(sp);
    return check_window_cmd(sp);
  }

  const std::vector<std::string>& artifacts() const { return artifacts_; }
  const std::vector<std::string>& failures() const { return failures_; }
  std::string message;

 private:
  void emit(const std::string& name, std::string_view contents) {
    io::write_atomic(out_ / name, contents);
    artifacts_.push_back(name);
  }

  SpacePair space(bool force) {
    SpaceOptions so;
    so.epsilon_t = cfg_.epsilon_t;
    so.epsilon_omega = cfg_.epsilon_omega;
    so.scan_step = cfg_.scan_step;
    so.threads = opt_.threads;
    so.force = force;
    SpacePair sp = SpacePair::make(cfg_.w_t, cfg_.w_omega, *grid_, so);
    failures_ = sp.failures();
    return sp;
  }

  int check_weights() {
    const SpacePair sp = space(true);
    json rep = {{"w_T", analysis_json(sp.w_t(), sp.time_analysis())},
                {"w_Omega", analysis_json(sp.w_omega(), sp.frequency_analysis())},
                {"C_T", sp.c_t()},
                {"mu_T", sp.mu_t()},
                {"C_Omega", sp.c_omega()},
                {"mu_Omega", sp.mu_omega()},
                {"hypotheses_hold", sp.hypotheses_hold()},
                {"failures", sp.failures()}};
    emit("weights_report.json", dump(rep));
    emit("mmc_w_T.csv", mmc_csv(sp.time_analysis().one_plus_curve));
    emit("mmc_w_Omega.csv", mmc_csv(sp.frequency_analysis().one_plus_curve));
    if (!sp.hypotheses_hold()) {
      message = "validation failed: ";
      for (std::size_t i = 0; i < sp.failures().size(); ++i) message += (i ? "; " : "") + sp.failures()[i];
      return 2;
    }
    return 0;
  }

  int transform() {
    const Signal f = make_signal(cfg_.target, *grid_);
    const Spectrum fh = forward_ft(f);
    const Signal back = inverse_ft(fh);
    double rt = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) rt = std::max(rt, std::abs(back.values[k] - f.values[k]));
    json rep = {{"count", f.size()}, {"round_trip_max_error", rt}};
    const bool zero = std::all_of(f.values.begin(), f.values.end(), [](cplx z) { return z == cplx(0.0); });
    rep["parseval_gap"] = zero ? json(0.0) : json(parseval_gap(f));
    emit("signal.csv", io::signal_csv(f.grid, f.values));
    emit("signal.grid.json", io::grid_json(f.grid));
    emit("spectrum.csv", io::signal_csv(fh.grid, fh.values));
    emit("spectrum.grid.json", io::grid_json(fh.grid));
    emit("transform_report.json", dump(rep));
    return 0;
  }

  int mollify(const SpacePair& sp) {
    const Signal f = make_signal(cfg_.target, *grid_);
    const Grid& g = *grid_;
    const std::vector<double>& w = sp.time_weight();
    std::mt19937_64 rng(opt_.seed);
    std::normal_distribution<double> normal;
    std::vector<std::vector<cplx>> probes(kProbeCount, std::vector<cplx>(g.count()));
    for (auto& p : probes)
      for (auto& z : p) z = cplx(normal(rng), normal(rng));

    std::string csv = "alpha,error_IM,error_MI,cert_bound,cert_envelope_bound,probe_max_ratio_I,probe_max_ratio_M\n";
    json rows = json::array();
    for (double alpha : cfg_.alphas) {
      const double e_im = composite_identity_error(g, f.values, alpha, w, CompositeOrder::IM);
      const double e_mi = composite_identity_error(g, f.values, alpha, w, CompositeOrder::MI);
      const OperatorNormCert cert = mollifier_certificate(g, alpha, sp.w_t());
      double ratio_i = 0.0, ratio_m = 0.0;
      for (const auto& p : probes) {
        const double n = weighted_l2_norm(g, p, w);
        ratio_i = std::max(ratio_i, weighted_l2_norm(g, mollify_values(g, p, alpha), w) / (cert.bound * n));
        ratio_m = std::max(ratio_m, weighted_l2_norm(g, gauss_multiply_values(g, p, alpha), w) / n);
      }
      csv += io::format_double(alpha) + ',' + io::format_double(e_im) + ',' + io::format_double(e_mi) + ',' +
             io::format_double(cert.bound) + ',' + io::format_double(cert.envelope_bound) + ',' +
             io::format_double(ratio_i) + ',' + io::format_double(ratio_m) + '\n';
      rows.push_back({{"alpha", alpha}, {"error_IM", e_im}, {"error_MI", e_mi}, {"cert_bound", cert.bound},
                      {"cert_envelope_bound", cert.envelope_bound}, {"probe_max_ratio_I", ratio_i},
                      {"probe_max_ratio_M", ratio_m}});
    }
    emit("mollify.csv", csv);
    emit("mollify_report.json", dump({{"weight", sp.w_t().describe()}, {"probes", kProbeCount}, {"rows", rows}}));
    if (!cfg_.alphas.empty()) {
      const std::vector<cplx> m = mollify_values(g, f.values, cfg_.alphas.back());
      emit("mollified.csv", io::signal_csv(g, m));
    }
    return 0;
  }

  std::vector<GaussianAtom> dictionary_atoms() const {
    const DictionaryConfig& d = cfg_.dictionary;
    if (!d.atoms_csv.empty()) return io::read_atoms_csv(d.atoms_csv);
    std::vector<GaussianAtom> atoms;
    for (double a : d.alpha_grid)
      for (double t : d.tau_grid) atoms.push_back({a, t});
    return atoms;
  }

  int approximate(const SpacePair& sp) {
    const Signal f = make_signal(cfg_.target, *grid_);
    const DictionaryConfig& d = cfg_.dictionary;
    ApproxReport rep;
    if (d.method == "greedy") {
      if (!d.window_csv.empty()) config_error("greedy pursuit runs over Gaussian atoms only");
      rep = greedy_pursuit(f, sp, d.alpha_grid, d.tau_grid, d.n_atoms, opt_.threads);
    } else if (d.method == "least-squares") {
      const std::vector<GaussianAtom> atoms = dictionary_atoms();
      if (!d.window_csv.empty()) {
        const Signal win = io::read_signal_csv(d.window_csv);
        rep = least_squares_fit(f, Dictionary::from_window(make_window(win), atoms, sp), d.ridge);
      } else {
        for (const GaussianAtom& a : atoms) validate_atom(a, *grid_);
        rep = least_squares_fit(f, Dictionary::gaussians(atoms, sp), d.ridge);
      }
    } else {
      config_error("unknown dictionary method '" + d.method + "'");
    }
    json atoms = json::array();
    for (std::size_t i = 0; i < rep.atoms.size(); ++i)
      atoms.push_back({{"alpha", rep.atoms[i].alpha}, {"tau", rep.atoms[i].tau}, {"coefficient", cplx_json(rep.coefficients[i])}});
    json j = {{"method", d.method},
              {"atoms", atoms},
              {"residual_h_norm", rep.residual_h_norm},
              {"target_h_norm", rep.target_h_norm},
              {"relative_residual", rep.target_h_norm > 0 ? rep.residual_h_norm / rep.target_h_norm : 0.0},
              {"residual_trace", rep.residual_trace},
              {"gram_condition", rep.gram_condition},
              {"ridge", rep.ridge}};
    emit("approx_report.json", dump(j));
    std::string csv = "iteration,residual_h_norm\n";
    for (std::size_t i = 0; i < rep.residual_trace.size(); ++i)
      csv += std::to_string(i + 1) + ',' + io::format_double(rep.residual_trace[i]) + '\n';
    emit("residual_trace.csv", csv);
    return 0;
  }

  int witness(const SpacePair& sp) {
    const Signal f = make_signal(cfg_.target, *grid_);
    const WitnessCurves w = completeness_witness(f, sp, cfg_.alphas);
    std::string csv = "alpha,term1,term2,target1,target2,I_alpha,I1_alpha,Iinf_alpha,term1_im,term2_im\n";
    for (std::size_t i = 0; i < w.alphas.size(); ++i) {
      csv += io::format_double(w.alphas[i]) + ',' + io::format_double(w.term1[i].real()) + ',' +
             io::format_double(w.term2[i].real()) + ',' + io::format_double(w.target1) + ',' +
             io::format_double(w.target2) + ',' + io::format_double(w.i_alpha[i]) + ',' +
             io::format_double(w.i1_alpha[i]) + ',' + io::format_double(w.iinf_alpha[i]) + ',' +
             io::format_double(w.term1[i].imag()) + ',' + io::format_double(w.term2[i].imag()) + '\n';
    }
    emit("witness.csv", csv);
    json j = {{"target1", w.target1}, {"target2", w.target2}, {"alphas", w.alphas}};
    json t1 = json::array(), t2 = json::array();
    for (std::size_t i = 0; i < w.alphas.size(); ++i) {
      t1.push_back(cplx_json(w.term1[i]));
      t2.push_back(cplx_json(w.term2[i]));
    }
    j["term1"] = t1;
    j["term2"] = t2;
    if (!w.alphas.empty()) {
      const double gap = std::abs(w.term1.back() - w.target1) + std::abs(w.term2.back() - w.target2);
      const double denom = w.target1 + w.target2;
      j["final_relative_gap"] = denom > 0 ? gap / denom : gap;
    }
    if (cfg_.fubini && !w.alphas.empty()) {
      const FubiniCheck fc = fubini_check(f, sp, w.alphas.back());
      j["fubini"] = {{"alpha", fc.alpha},
                     {"operator_form", cplx_json(fc.operator_form)},
                     {"time_first", cplx_json(fc.time_first)},
                     {"tau_first", cplx_json(fc.tau_first)},
                     {"max_relative_gap", fc.max_relative_gap}};
    }
    emit("witness.json", dump(j));
    return 0;
  }

  int check_window_cmd(const SpacePair& sp) {
    const Signal g = make_signal(cfg_.window ? *cfg_.window : cfg_.target, *grid_);
    const std::vector<double> alphas = cfg_.alphas;
    const WindowReport rep = check_window(make_window(g), sp, alphas, cfg_.window_delta);
    json conds = json::array();
    for (std::size_t i = 0; i < kWindowConditionCount; ++i) {
      const auto c = static_cast<WindowCondition>(i);
      conds.push_back({{"name", window_condition_name(c)}, {"passed", rep[c].passed}, {"margin", rep[c].margin}});
    }
    emit("window_report.json", dump({{"conditions", conds},
                                     {"all_passed", rep.all_passed()},
                                     {"alphas", rep.alphas},
                                     {"tail_t", rep.tail_t},
                                     {"tail_omega", rep.tail_omega}}));
    if (!rep.all_passed()) {
      message = "validation failed: window conditions";
      for (std::size_t i = 0; i < kWindowConditionCount; ++i)
        if (!rep.results[i].passed) message += std::string(" ") + std::string(window_condition_name(static_cast<WindowCondition>(i)));
      return 2;
    }
    return 0;
  }

  const ExperimentConfig& cfg_;
  const RunOptions& opt_;
  fs::path out_;
  std::optional<Grid> grid_;
  std::vector<std::string> artifacts_;
  std::vector<std::string> failures_;
};

}  // namespace

namespace {

ExperimentConfig parse_config_impl(std::string_view text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("config must be a JSON object");

  ExperimentConfig c;
  if (j.contains("grid")) {
    c.halfwidth = get_or<double>(j["grid"], "halfwidth", c.halfwidth);
    c.step = get_or<double>(j["grid"], "step", c.step);
  }
  try {
    (void)Grid::make(c.halfwidth, c.step);
  } catch (const Error& e) {
    config_error(std::string("invalid grid: ") + e.what());
  }
  const json weights = j.value("weights", json::object());
  c.w_t = weights.contains("w_T") ? parse_weight(weights["w_T"], c.halfwidth, base_dir) : WeightSpec::constant(1.0, c.halfwidth);
  c.w_omega = weights.contains("w_Omega") ? parse_weight(weights["w_Omega"], 1.0 / (2.0 * c.step), base_dir)
                                          : WeightSpec::constant(1.0, 1.0 / (2.0 * c.step));
  c.epsilon_t = get_or<double>(weights, "epsilon_T", c.epsilon_t);
  c.epsilon_omega = get_or<double>(weights, "epsilon_Omega", c.epsilon_omega);
  c.scan_step = get_or<double>(weights, "scan_step", c.scan_step);
  if (!(c.scan_step > 0.0)) config_error("scan_step must be positive");

  if (j.contains("target")) c.target = parse_source(j["target"], base_dir);
  if (j.contains("window")) {
    c.window = parse_source(j["window"], base_dir);
    c.window_delta = get_or<double>(j["window"], "delta", c.window_delta);
  }
  if (j.contains("dictionary")) {
    const json& d = j["dictionary"];
    c.dictionary.alpha_grid = get_or<std::vector<double>>(d, "alpha_grid", {});
    c.dictionary.tau_grid = get_or<std::vector<double>>(d, "tau_grid", {});
    if (d.contains("atoms_csv")) c.dictionary.atoms_csv = resolve(base_dir, d["atoms_csv"].get<std::string>());
    if (d.contains("window_csv")) c.dictionary.window_csv = resolve(base_dir, d["window_csv"].get<std::string>());
    c.dictionary.method = get_or<std::string>(d, "method", c.dictionary.method);
    if (c.dictionary.method != "least-squares" && c.dictionary.method != "greedy")
      config_error("unknown dictionary method '" + c.dictionary.method + "'");
    c.dictionary.n_atoms = get_or<std::size_t>(d, "n_atoms", c.dictionary.n_atoms);
    if (d.contains("ridge") && !d["ridge"].is_null()) c.dictionary.ridge = d["ridge"].get<double>();
  }
  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    c.alphas = s.is_array() ? s.get<std::vector<double>>() : get_or<std::vector<double>>(s, "alphas", c.alphas);
    if (s.is_object()) c.fubini = get_or<bool>(s, "fubini", false);
  }
  if (c.alphas.empty() || !std::is_sorted(c.alphas.begin(), c.alphas.end()) ||
      std::any_of(c.alphas.begin(), c.alphas.end(), [](double a) { return !(a > 0.0) || !std::isfinite(a); }))
    config_error("schedule must be a nonempty ascending list of positive alphas");
  if (j.contains("outputs")) c.outputs = resolve(base_dir, j["outputs"].get<std::string>());
  return c;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const fs::path& base_dir) {
  try {
    return parse_config_impl(text, base_dir);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(e.what());
  } catch (const json::exception& e) {
    config_error(std::string("bad config value: ") + e.what());
  }
}

Signal make_signal(const SignalSource& src, const Grid& grid) {
  switch (src.kind) {
    case SignalSource::Kind::Gaussian:
      validate_atom(src.atom, grid);
      return atom_signal(src.atom, grid);
    case SignalSource::Kind::Bump:
      return sample<TimeDomain>(grid, [&](double t) {
        const double u = (t - src.center) / src.radius;
        return std::abs(u) < 1.0 ? cplx((1 - u * u) * (1 - u * u)) : cplx(0.0);
      });
    case SignalSource::Kind::Zero:
      return Signal(grid);
    case SignalSource::Kind::Atoms: {
      Signal s(grid);
      for (std::size_t i = 0; i < src.atoms.size(); ++i) {
        validate_atom(src.atoms[i], grid);
        const Signal a = atom_signal(src.atoms[i], grid);
        for (std::size_t k = 0; k < grid.count(); ++k) s.values[k] += src.coefficients[i] * a.values[k];
      }
      return s;
    }
    case SignalSource::Kind::Csv: {
      Signal s = io::read_signal_csv(src.csv);
      if (!s.grid.same_as(grid)) fail(ErrorCode::GridMismatch, src.csv.string() + " is not sampled on the configured grid");
      return s;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown signal source");
}

bool is_subcommand(std::string_view name) noexcept {
  return std::find(kSubcommands.begin(), kSubcommands.end(), name) != kSubcommands.end();
}

RunResult run_experiment(const fs::path& config_path, std::string_view subcommand, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  json manifest = {{"tool", "gaussdense"},
                   {"version", kVersion},
                   {"subcommand", std::string(subcommand)},
                   {"config", config_path.string()},
                   {"forced", options.force},
                   {"threads", options.threads},
                   {"seed", options.seed}};
  std::optional<fs::path> out = options.out_dir;
  std::vector<std::string> failures;
  try {
    if (!is_subcommand(subcommand)) config_error("unknown subcommand '" + std::string(subcommand) + "'");
    const std::string text = io::read_text(config_path);
    manifest["config_hash"] = "fnv1a64:" + io::fnv1a_hex(text);
    const ExperimentConfig cfg = parse_config(text, config_path.parent_path());
    if (!out) out = cfg.outputs;
    Runner runner(cfg, options, *out);
    try {
      result.exit_code = runner.run(subcommand);
      result.message = runner.message;
    } catch (...) {
      result.artifacts = runner.artifacts();
      failures = runner.failures();
      throw;
    }
    result.artifacts = runner.artifacts();
    failures = runner.failures();
  } catch (const Error& e) {
    result.exit_code = e.code() == ErrorCode::ValidationError ? 2 : 1;
    result.message = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.message = std::string("internal error: ") + e.what();
  }

  manifest["exit_code"] = result.exit_code;
  manifest["message"] = result.message;
  manifest["hypothesis_failures"] = failures;
  manifest["artifacts"] = result.artifacts;
  manifest["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out) {
    try {
      io::write_atomic(*out / "manifest.json", dump(manifest));
    } catch (const Error& e) {
      if (result.exit_code == 0) {
        result.exit_code = 1;
        result.message = e.what();
      }
    }
  }
  return result;
}

}  // namespace gaussdense
