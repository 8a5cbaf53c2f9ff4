// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario runner: assembles the chiral signature operators of the bundled
// model families, computes index reports and writes them as canonical JSON
// (plus optional CSV diagnostics).
//
// Exit codes: 0 finite verdict, 1 error, 2 "finite = false".

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chindex/cfs.hpp"
#include "chindex/homotopy.hpp"
#include "chindex/index_engine.hpp"
#include "chindex/report_json.hpp"
#include "chindex/spiral.hpp"
#include "chindex/torus.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace chindex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfinite = 2;

struct CommonOpts {
  std::string out_dir = ".";
  bool emit_csv = false;
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out_dir, "output directory for report files");
  cmd->add_flag("--csv", opts.emit_csv, "also write CSV diagnostics");
  cmd->add_option("--config", opts.config_path, "JSON config file");
}

json load_config(const CommonOpts& opts) {
  if (opts.config_path.empty()) return json::object();
  std::ifstream is(opts.config_path);
  if (!is) throw std::runtime_error("cannot open config file " + opts.config_path);
  return json::parse(is);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw std::runtime_error("unknown config key '" + key + "' in " + where);
  }
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << content;
}

int emit_index_report(const IndexReport& rep, const CommonOpts& opts,
                      const SparseOperator* matrix) {
  const fs::path out(opts.out_dir);
  fs::create_directories(out);
  write_file(out / "report.json", index_report_json(rep));
  if (opts.emit_csv) {
    write_file(out / "singular_values.csv", singular_values_csv(rep));
    if (matrix) {
      std::ofstream os(out / "matrix_sl.csv", std::ios::binary);
      matrix->dump_csv(os);
    }
  }
  std::cout << (rep.finite ? "finite" : "not finite");
  if (rep.index) std::cout << ", index = " << *rep.index;
  if (!rep.note.empty()) std::cout << " (" << rep.note << ")";
  std::cout << "\n";
  return rep.finite ? kExitOk : kExitInfinite;
}

int emit_sweep_report(const SweepReport& rep, const CommonOpts& opts) {
  const fs::path out(opts.out_dir);
  fs::create_directories(out);
  write_file(out / "report.json", sweep_report_json(rep));
  if (opts.emit_csv) write_file(out / "sweep.csv", sweep_csv(rep));
  std::cout << "verdict: " << rep.verdict.str() << "\n";
  return rep.verdict.kind == SweepVerdict::Kind::Undefined ? kExitInfinite : kExitOk;
}

// ---- shift ---------------------------------------------------------------

int run_shift(const CommonOpts& opts, std::optional<int> p_flag, std::optional<long long> n_flag,
              bool negate) {
  json cfg = load_config(opts);
  check_keys(cfg, {"p", "N", "negate_gamma"}, "shift config");
  const int p = p_flag.value_or(cfg.value("p", 1));
  const long long n = n_flag.value_or(cfg.value("N", static_cast<long long>(20 * p)));
  const bool neg = negate || cfg.value("negate_gamma", false);

  DiscreteCFS sys = build_shift_cfs(p, n);
  if (neg) sys = negate_gamma(std::move(sys));
  for (const auto& pt : sys.points) {
    const auto rep = validate_pseudoscalar(pt, sys.spin_dim);
    if (!rep.ok) throw std::runtime_error("pseudoscalar validation failed: " + rep.detail);
  }
  auto [s_l, s_r] = assemble_chiral(sys);
  TruncationPolicy pol = TruncationPolicy::defaults(static_cast<int>(n));
  IndexReport rep = noether_index(s_l, pol);
  rep.truncation.scenario = "shift";
  return emit_index_report(rep, opts, &s_l);
}

// ---- torus ---------------------------------------------------------------

std::function<FourierSeries(int)> conformal_provider(const json& conformal) {
  if (conformal.contains("poisson")) {
    check_keys(conformal, {"poisson"}, "conformal");
    check_keys(conformal["poisson"], {"r"}, "conformal.poisson");
    const double r = conformal["poisson"].value("r", 0.5);
    return [r](int cutoff) { return poisson_series(r, cutoff); };
  }
  if (conformal.contains("fourier")) {
    check_keys(conformal, {"fourier"}, "conformal");
    check_keys(conformal["fourier"], {"coeffs"}, "conformal.fourier");
    FourierSeries series;
    for (const auto& t : conformal["fourier"].at("coeffs")) {
      if (!t.is_array() || t.size() != 3)
        throw std::runtime_error("fourier coeffs entries must be [k, re, im]");
      const int k = t[0].get<int>();
      series.coeffs[k] = Complex(t[1].get<double>(), t[2].get<double>());
      series.cutoff = std::max(series.cutoff, std::abs(k));
    }
    if (!series.real_symmetric())
      throw std::runtime_error("fourier coeffs violate realness (fhat_{-k} = conj(fhat_k))");
    return [series](int cutoff) {
      if (series.cutoff < cutoff)
        throw std::runtime_error("fourier coeffs cutoff too small for requested truncation");
      return series;
    };
  }
  if (conformal.contains("samples")) {
    check_keys(conformal, {"samples"}, "conformal");
    std::vector<std::pair<double, double>> samples;
    for (const auto& t : conformal.at("samples")) {
      if (!t.is_array() || t.size() != 2)
        throw std::runtime_error("samples entries must be [phi, value]");
      samples.emplace_back(t[0].get<double>(), t[1].get<double>());
    }
    return [samples](int cutoff) { return fourier_coefficients(samples, cutoff); };
  }
  throw std::runtime_error("conformal config needs one of: poisson, fourier, samples");
}

int run_torus(const CommonOpts& opts, std::optional<int> p_flag, std::optional<int> k_flag,
              std::optional<double> r_flag) {
  json cfg = load_config(opts);
  check_keys(cfg, {"p", "K", "conformal"}, "torus config");
  const int p = p_flag.value_or(cfg.value("p", 1));
  const int cutoff = k_flag.value_or(cfg.value("K", 40));
  json conformal = cfg.value("conformal", json::object());
  if (r_flag) conformal = json{{"poisson", {{"r", *r_flag}}}};
  if (conformal.empty()) conformal = json{{"poisson", {{"r", 0.5}}}};

  const auto series_for = conformal_provider(conformal);
  IndexReport rep = torus_index0_stabilized(series_for, p, cutoff);
  const auto [s_l, s_r] = assemble_torus(series_for(2 * cutoff + p), p, cutoff);
  return emit_index_report(rep, opts, &s_l);
}

// ---- spiral ----------------------------------------------------------------

int run_spiral(const CommonOpts& opts, std::optional<int> p_flag, std::optional<int> k_flag,
               std::optional<double> nu_flag, std::optional<std::uint64_t> seed_flag) {
  json cfg = load_config(opts);
  check_keys(cfg, {"p", "K", "nu", "seed", "amplitude", "decay", "a", "b"}, "spiral config");
  const int p = p_flag.value_or(cfg.value("p", 1));
  const int cutoff = k_flag.value_or(cfg.value("K", 16));
  const double nu = nu_flag.value_or(cfg.value("nu", 0.3));

  MuCoefficients co;
  if (cfg.contains("a") || cfg.contains("b")) {
    co.nu = nu;
    const auto read_coeffs = [](const json& arr, std::map<int, Complex>& into) {
      for (const auto& t : arr) {
        if (!t.is_array() || t.size() != 3)
          throw std::runtime_error("coefficient entries must be [index, re, im]");
        into[t[0].get<int>()] = Complex(t[1].get<double>(), t[2].get<double>());
      }
    };
    if (cfg.contains("a")) read_coeffs(cfg["a"], co.a);
    if (cfg.contains("b")) read_coeffs(cfg["b"], co.b);
  } else {
    const std::uint64_t seed = seed_flag.value_or(cfg.value("seed", 1));
    const double amplitude = cfg.value("amplitude", 0.05);
    const double decay = cfg.value("decay", 0.7);
    co = seeded_mu_coefficients(p, cutoff, nu, seed, amplitude, decay);
  }

  IndexReport rep = spiral_index(co, p, cutoff);
  const SparseOperator s_l = assemble_spiral_sl(co, p, cutoff);
  return emit_index_report(rep, opts, &s_l);
}

// ---- lifetime --------------------------------------------------------------

int run_lifetime(const CommonOpts& opts, std::optional<std::string> t_flag,
                 std::optional<int> k_flag) {
  json cfg = load_config(opts);
  check_keys(cfg, {"T", "K"}, "lifetime config");
  const std::string t_str = t_flag.value_or(cfg.value("T", std::string("1")));
  const int cutoff = k_flag.value_or(cfg.value("K", 50));
  const TimeParam T = TimeParam::parse(t_str);

  IndexReport rep = lifetime_index0_stabilized(T, cutoff);
  const auto [s_l, s_r] = assemble_lifetime(T, cutoff);
  return emit_index_report(rep, opts, &s_l);
}

// ---- homotopy sweeps -------------------------------------------------------

int run_homotopy(const CommonOpts& opts) {
  json cfg = load_config(opts);
  if (cfg.empty()) throw std::runtime_error("conformal-homotopy requires --config");
  check_keys(cfg, {"scenario", "from", "to", "steps", "K", "T"}, "homotopy config");
  const std::string scenario = cfg.at("scenario").get<std::string>();
  const int steps = cfg.value("steps", 9);
  const int cutoff = cfg.value("K", 50);

  HomotopyFamily family;
  if (scenario == "lifetime") {
    check_keys(cfg.at("from"), {"T"}, "homotopy from");
    check_keys(cfg.at("to"), {"T"}, "homotopy to");
    family = lifetime_family(TimeParam::parse(cfg.at("from").at("T").get<std::string>()),
                             TimeParam::parse(cfg.at("to").at("T").get<std::string>()), cutoff);
  } else if (scenario == "conformal") {
    const auto read_bump = [](const json& j, const char* where) {
      check_keys(j, {"scale", "modulation"}, where);
      BumpSpec bump;
      bump.scale = j.value("scale", 1.0);
      bump.modulation = j.value("modulation", 0.0);
      return bump;
    };
    const TimeParam T = TimeParam::parse(cfg.value("T", std::string("pi")));
    family = conformal_family(read_bump(cfg.at("from"), "homotopy from"),
                              read_bump(cfg.at("to"), "homotopy to"), T.value(), cutoff);
  } else {
    throw std::runtime_error("unknown homotopy scenario '" + scenario +
                             "' (expected lifetime or conformal)");
  }
  return emit_sweep_report(homotopy_sweep(family, steps), opts);
}

// ---- cfs file --------------------------------------------------------------

int run_cfs_file(const CommonOpts& opts, const std::string& path, std::optional<int> k_flag) {
  const DiscreteCFS sys = cfs_from_json_file(path);
  for (std::size_t i = 0; i < sys.points.size(); ++i) {
    const auto rep = validate_pseudoscalar(sys.points[i], sys.spin_dim);
    if (!rep.ok)
      throw std::runtime_error("pseudoscalar validation failed at point " + std::to_string(i) +
                               ": " + rep.detail);
  }
  auto [s_l, s_r] = assemble_chiral(sys);
  TruncationPolicy pol = TruncationPolicy::defaults(
      k_flag.value_or(static_cast<int>(sys.hilbert_dim)));
  IndexReport rep = noether_index(s_l, pol);
  rep.truncation.scenario = "cfs-file";
  return emit_index_report(rep, opts, &s_l);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiral signature operator index scenarios"};
  app.require_subcommand(1);

  CommonOpts shift_opts, torus_opts, spiral_opts, lifetime_opts, homotopy_opts, cfs_opts;

  auto* shift = app.add_subcommand("shift", "shift family on l^2(N)");
  std::optional<int> shift_p;
  std::optional<long long> shift_n;
  bool shift_negate = false;
  shift->add_option("--p", shift_p, "shift distance (index value)");
  shift->add_option("--N", shift_n, "truncation dimension");
  shift->add_flag("--negate-gamma", shift_negate, "flip the pseudoscalar at every point");
  add_common(shift, shift_opts);

  auto* torus = app.add_subcommand("torus", "massless odd example on (0,2pi) x S^1");
  std::optional<int> torus_p, torus_k;
  std::optional<double> torus_r;
  torus->add_option("--p", torus_p, "dispersion gap parameter");
  torus->add_option("--truncation,--K", torus_k, "momentum cutoff");
  torus->add_option("--poisson-r", torus_r, "Poisson kernel parameter");
  add_common(torus, torus_opts);

  auto* spiral = app.add_subcommand("spiral", "spiral example on (0,6pi) x S^1");
  std::optional<int> spiral_p, spiral_k;
  std::optional<double> spiral_nu;
  std::optional<std::uint64_t> spiral_seed;
  spiral->add_option("--p", spiral_p, "number of spirals (index value)");
  spiral->add_option("--truncation,--K", spiral_k, "momentum cutoff");
  spiral->add_option("--nu", spiral_nu, "vectorial mixing strength");
  spiral->add_option("--seed", spiral_seed, "coefficient phase seed");
  add_common(spiral, spiral_opts);

  auto* lifetime = app.add_subcommand("lifetime", "flat cylinder (0,T) x S^1");
  std::optional<std::string> lifetime_t;
  std::optional<int> lifetime_k;
  lifetime->add_option("--T", lifetime_t, "lifetime, e.g. \"1\", \"pi\", \"pi*1/2\"");
  lifetime->add_option("--truncation,--K", lifetime_k, "momentum cutoff");
  add_common(lifetime, lifetime_opts);

  auto* homotopy = app.add_subcommand("conformal-homotopy", "homotopy sweep with index tracking");
  add_common(homotopy, homotopy_opts);

  auto* cfs = app.add_subcommand("cfs", "discrete causal fermion system from file");
  auto* cfs_run = cfs->add_subcommand("run", "run the index on a serialized system");
  std::string cfs_path;
  std::optional<int> cfs_k;
  cfs_run->add_option("file", cfs_path, "JSON system description")->required();
  cfs_run->add_option("--truncation,--K", cfs_k, "policy cutoff (default: hilbert_dim)");
  add_common(cfs_run, cfs_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (shift->parsed()) return run_shift(shift_opts, shift_p, shift_n, shift_negate);
    if (torus->parsed()) return run_torus(torus_opts, torus_p, torus_k, torus_r);
    if (spiral->parsed()) return run_spiral(spiral_opts, spiral_p, spiral_k, spiral_nu, spiral_seed);
    if (lifetime->parsed()) return run_lifetime(lifetime_opts, lifetime_t, lifetime_k);
    if (homotopy->parsed()) return run_homotopy(homotopy_opts);
    if (cfs->parsed() && cfs_run->parsed()) return run_cfs_file(cfs_opts, cfs_path, cfs_k);
    std::cerr << "error: no scenario selected\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
