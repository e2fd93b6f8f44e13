#include "synchro/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "synchro/coincidence.hpp"
#include "synchro/csvio.hpp"
#include "synchro/dendrogram.hpp"
#include "synchro/harness.hpp"
#include "synchro/hawkes_formulas.hpp"
#include "synchro/jitter_formulas.hpp"
#include "synchro/permtest.hpp"
#include "synchro/simulate.hpp"
#include "synchro/svg.hpp"
#include "synchro/version.hpp"

namespace synchro {

namespace {

using MetaList = std::vector<std::pair<std::string, std::string>>;

// model flags shared by the generative subcommands
struct ModelFlags {
  std::string model = "jitter";
  double T = 2.0;
  double lambda1 = 10.0, lambda2 = 10.0, eta = 1.0;
  std::string noise = "uniform:-0.1,0.1";
  double nu = 1.0, a = 3.0, b = 4.0;
  int M = 10;
  double warmup = 10.0;

  Model build() const {
    if (model == "jitter") {
      JitterParams p;
      p.lambda1 = lambda1;
      p.lambda2 = lambda2;
      p.eta = eta;
      p.T = T;
      p.noise = NoiseSpec::parse(noise);
      return Model::make_jitter(p);
    }
    HawkesParams p;
    p.nu = nu;
    p.a = a;
    p.b = b;
    p.M = M;
    p.T = T;
    p.warmup = warmup;
    if (model == "hawkes") return Model::make_hawkes(p);
    if (model == "hawkes-indep") return Model::make_hawkes_indep(p);
    if (model == "identical") return Model::make_identical(lambda1, T);
    throw CLI::ValidationError("--model", "unknown model '" + model + "'");
  }

  void append_meta(MetaList& meta) const {
    meta.emplace_back("model", model);
    meta.emplace_back("T", fmt(T));
    if (model == "jitter" || model == "identical") {
      meta.emplace_back("lambda1", fmt(lambda1));
      if (model == "jitter") {
        meta.emplace_back("lambda2", fmt(lambda2));
        meta.emplace_back("eta", fmt(eta));
        meta.emplace_back("noise", noise);
      }
    } else {
      meta.emplace_back("nu", fmt(nu));
      meta.emplace_back("a", fmt(a));
      meta.emplace_back("b", fmt(b));
      meta.emplace_back("M", fmt(M));
      meta.emplace_back("warmup", fmt(warmup));
    }
  }
};

void add_model_flags(CLI::App* sub, ModelFlags& mf, bool h0_only = false) {
  const std::vector<std::string> kinds =
      h0_only ? std::vector<std::string>{"jitter", "hawkes-indep"}
              : std::vector<std::string>{"jitter", "hawkes", "hawkes-indep",
                                         "identical"};
  sub->add_option("--model", mf.model, "generative model")
      ->check(CLI::IsMember(kinds))
      ->capture_default_str();
  sub->add_option("--T", mf.T, "observation window length")->capture_default_str();
  sub->add_option("--lambda1", mf.lambda1, "background rate, first train")
      ->capture_default_str();
  sub->add_option("--lambda2", mf.lambda2, "background rate, second train")
      ->capture_default_str();
  sub->add_option("--eta", mf.eta, "injection rate")->capture_default_str();
  sub->add_option("--noise", mf.noise,
                  "injection jitter: uniform:lo,hi | tridec:D | triinc:D")
      ->capture_default_str();
  sub->add_option("--nu", mf.nu, "per-neuron baseline rate")->capture_default_str();
  sub->add_option("--a", mf.a, "kernel height")->capture_default_str();
  sub->add_option("--b", mf.b, "kernel decay rate")->capture_default_str();
  sub->add_option("--M", mf.M, "network size")->capture_default_str();
  sub->add_option("--warmup", mf.warmup, "stationarity warm-up length")
      ->capture_default_str();
}

void use_flat_config(CLI::App* sub) {
  sub->set_config("--config", "", "flat key=value config file; flags override it");
  sub->allow_config_extras(CLI::config_extras_mode::ignore);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw CLI::ValidationError("grid", "no values in '" + text + "'");
  return out;
}

MetaList base_meta(const std::string& command) {
  MetaList m;
  m.emplace_back("tool", "synchro");
  m.emplace_back("version", kVersion);
  m.emplace_back("command", command);
  return m;
}

void warn_notes(const std::vector<std::string>& notes) {
  for (const auto& n : notes)
    std::cerr << "warning: outside the guarantee's hypotheses: " << n << "\n";
}

std::string probes_field(const std::vector<ProbeRow>& probes) {
  std::string s;
  for (const auto& p : probes) {
    if (!s.empty()) s += ";";
    s += std::to_string(p.n) + ":" + fmt(p.power) + ":" + fmt(p.ci_half);
  }
  return s;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"permutation tests of dependence between spike-train pairs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("synchro ") + kVersion);

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "draw trials and write a spike CSV");
  ModelFlags sim_mf;
  int sim_n = 10;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  add_model_flags(sim, sim_mf);
  sim->add_option("--n", sim_n, "number of trials")->capture_default_str();
  sim->add_option("--seed", sim_seed, "RNG seed")->required();
  sim->add_option("--out", sim_out, "output CSV path")->required();
  use_flat_config(sim);

  // ---- test ----
  auto* tst = app.add_subcommand("test", "run the permutation test on a spike CSV");
  std::string tst_input, tst_emit_null;
  double tst_T = 0, tst_delta = 0.1, tst_alpha = 0.05;
  int tst_B = 5000;
  std::uint64_t tst_seed = 0;
  tst->add_option("--input", tst_input, "spike CSV (trial,process,time)")->required();
  tst->add_option("--T", tst_T, "window length the data was recorded on")->required();
  tst->add_option("--delta", tst_delta, "coincidence delay")->capture_default_str();
  tst->add_option("--alpha", tst_alpha, "level")->capture_default_str();
  tst->add_option("--B", tst_B, "permutation draws")->capture_default_str();
  tst->add_option("--seed", tst_seed, "RNG seed")->required();
  tst->add_option("--emit-null", tst_emit_null, "write the null statistics here");
  use_flat_config(tst);

  // ---- analytic ----
  auto* ana = app.add_subcommand("analytic", "closed-form quantities");
  ana->require_subcommand(1);
  auto* anaj = ana->add_subcommand("jitter", "injection-model formulas");
  double aj_l1 = 10, aj_l2 = 10, aj_eta = 1, aj_T = 2;
  std::string aj_noise = "uniform:-0.1,0.1", aj_deltas = "0.1", aj_out;
  int aj_n = 200;
  double aj_alpha = 0.05, aj_beta = 0.05, aj_C = 1.0, aj_Cp = 1.0;
  bool aj_ccal = false;
  anaj->add_option("--lambda1", aj_l1)->capture_default_str();
  anaj->add_option("--lambda2", aj_l2)->capture_default_str();
  anaj->add_option("--eta", aj_eta)->capture_default_str();
  anaj->add_option("--T", aj_T)->capture_default_str();
  anaj->add_option("--noise", aj_noise)->capture_default_str();
  anaj->add_option("--delta", aj_deltas, "comma-separated delay grid")
      ->capture_default_str();
  anaj->add_option("--n", aj_n, "trials, for the threshold bound")->capture_default_str();
  anaj->add_option("--alpha", aj_alpha)->capture_default_str();
  anaj->add_option("--beta", aj_beta)->capture_default_str();
  anaj->add_option("--C", aj_C, "scaling-bound constant")->capture_default_str();
  anaj->add_option("--Cprime", aj_Cp, "scaling-bound constant for n_min")
      ->capture_default_str();
  anaj->add_flag("--C-calibrated", aj_ccal,
                 "use the fully tracked concentration constant instead of C");
  anaj->add_option("--out", aj_out, "write CSV here instead of stdout");
  use_flat_config(anaj);

  auto* anah = ana->add_subcommand("hawkes", "mean-field network formulas");
  double ah_nu = 1, ah_a = 3, ah_b = 4, ah_T = 2;
  int ah_M = 10, ah_n = 200;
  std::string ah_deltas = "0.1", ah_out;
  double ah_alpha = 0.05, ah_beta = 0.05, ah_C = 1.0, ah_Cp = 1.0;
  anah->add_option("--nu", ah_nu)->capture_default_str();
  anah->add_option("--a", ah_a)->capture_default_str();
  anah->add_option("--b", ah_b)->capture_default_str();
  anah->add_option("--M", ah_M)->capture_default_str();
  anah->add_option("--T", ah_T)->capture_default_str();
  anah->add_option("--delta", ah_deltas, "comma-separated delay grid")
      ->capture_default_str();
  anah->add_option("--n", ah_n, "trials, for the threshold bound")->capture_default_str();
  anah->add_option("--alpha", ah_alpha)->capture_default_str();
  anah->add_option("--beta", ah_beta)->capture_default_str();
  anah->add_option("--C", ah_C, "scaling-bound constant")->capture_default_str();
  anah->add_option("--Cprime", ah_Cp, "scaling-bound constant for n_min")
      ->capture_default_str();
  anah->add_option("--out", ah_out, "write CSV here instead of stdout");
  use_flat_config(anah);

  // ---- power ----
  auto* pow_ = app.add_subcommand("power", "power curve along one parameter");
  ModelFlags pw_mf;
  std::string pw_vary = "delta", pw_grid = "0.05,0.1,0.15,0.2", pw_out, pw_svg;
  int pw_n = 100, pw_N = 1000, pw_B = 500, pw_threads = 1;
  double pw_alpha = 0.05, pw_delta = 0.1;
  std::uint64_t pw_seed = 0;
  bool pw_full = false;
  add_model_flags(pow_, pw_mf);
  pow_->add_option("--vary", pw_vary, "grid axis")
      ->check(CLI::IsMember({"delta", "n", "M"}))
      ->capture_default_str();
  pow_->add_option("--grid", pw_grid, "comma-separated grid values")
      ->capture_default_str();
  pow_->add_option("--n", pw_n, "trials per test")->capture_default_str();
  auto* pw_nsim_opt =
      pow_->add_option("--N-sim", pw_N, "replicates per grid point")->capture_default_str();
  auto* pw_b_opt = pow_->add_option("--B", pw_B, "permutation draws")->capture_default_str();
  pow_->add_option("--alpha", pw_alpha)->capture_default_str();
  pow_->add_option("--delta", pw_delta, "delay when not the grid axis")
      ->capture_default_str();
  pow_->add_option("--seed", pw_seed, "RNG seed")->required();
  pow_->add_option("--threads", pw_threads, "worker threads (never changes results)")
      ->capture_default_str();
  pow_->add_option("--out", pw_out, "output CSV path")->required();
  pow_->add_option("--svg", pw_svg, "optional SVG rendering path");
  pow_->add_flag("--full-scale", pw_full,
                 "full-scale defaults: N_sim=10000, B=5000 unless given");
  use_flat_config(pow_);

  // ---- typeI ----
  auto* t1 = app.add_subcommand("typeI", "rejection rate under the null");
  ModelFlags t1_mf;
  t1_mf.eta = 0.0;
  t1_mf.model = "jitter";
  int t1_n = 100, t1_N = 2000, t1_B = 500, t1_threads = 1;
  double t1_alpha = 0.05, t1_delta = 0.1;
  std::uint64_t t1_seed = 0;
  std::string t1_out;
  add_model_flags(t1, t1_mf, /*h0_only=*/true);
  t1->add_option("--n", t1_n, "trials per test")->capture_default_str();
  t1->add_option("--N-sim", t1_N, "replicates")->capture_default_str();
  t1->add_option("--B", t1_B, "permutation draws")->capture_default_str();
  t1->add_option("--alpha", t1_alpha)->capture_default_str();
  t1->add_option("--delta", t1_delta)->capture_default_str();
  t1->add_option("--seed", t1_seed, "RNG seed")->required();
  t1->add_option("--threads", t1_threads, "worker threads (never changes results)")
      ->capture_default_str();
  t1->add_option("--out", t1_out, "output CSV path")->required();
  use_flat_config(t1);

  // ---- nstar ----
  auto* ns = app.add_subcommand("nstar", "minimal trials for target power, per M");
  ModelFlags ns_mf;
  ns_mf.model = "hawkes";
  ns_mf.a = 10;
  ns_mf.b = 20;
  std::string ns_grid = "4,6,8", ns_out;
  double ns_beta = 0.2, ns_alpha = 0.05, ns_delta = 0.1;
  int ns_step = 10, ns_nmax = 2000, ns_N = 500, ns_B = 500, ns_threads = 1;
  std::uint64_t ns_seed = 0;
  bool ns_fit = false, ns_full = false;
  add_model_flags(ns, ns_mf);
  ns->add_option("--M-grid", ns_grid, "comma-separated network sizes")
      ->capture_default_str();
  ns->add_option("--beta", ns_beta, "target Type II error")->capture_default_str();
  ns->add_option("--step", ns_step, "search lattice spacing")->capture_default_str();
  ns->add_option("--n-max", ns_nmax, "saturation bound")->capture_default_str();
  auto* ns_nsim_opt = ns->add_option("--N-sim", ns_N, "replicates per probe")
                          ->capture_default_str();
  auto* ns_b_opt = ns->add_option("--B", ns_B, "permutation draws")->capture_default_str();
  ns->add_option("--alpha", ns_alpha)->capture_default_str();
  ns->add_option("--delta", ns_delta)->capture_default_str();
  ns->add_option("--seed", ns_seed, "RNG seed")->required();
  ns->add_option("--threads", ns_threads, "worker threads (never changes results)")
      ->capture_default_str();
  ns->add_option("--out", ns_out, "output CSV path")->required();
  ns->add_flag("--fit", ns_fit, "also fit n* ~ c0 + c1 M^2 and print the fit");
  ns->add_flag("--full-scale", ns_full,
               "full-scale defaults: N_sim=10000, B=5000 unless given");
  use_flat_config(ns);

  // ---- dendrograms ----
  auto* den = app.add_subcommand("dendrograms", "coalescence-tree census");
  int den_l = 3;
  std::string den_emit;
  den->add_option("--l", den_l, "number of leaves (2..5)")
      ->check(CLI::Range(2, 5))
      ->required();
  den->add_option("--emit", den_emit, "write one labeled tree per line here");

  // ---- cumulant ----
  auto* cum = app.add_subcommand("cumulant", "order-l cumulant density at given times");
  int cum_l = 2;
  std::string cum_times = "0,0.5";
  double cum_mu = 10, cum_a = 3, cum_b = 4, cum_tol = 1e-8;
  cum->add_option("--l", cum_l, "order (2..4)")->check(CLI::Range(2, 4))->required();
  cum->add_option("--times", cum_times, "comma-separated, distinct")->required();
  cum->add_option("--mu", cum_mu, "baseline rate")->capture_default_str();
  cum->add_option("--a", cum_a)->capture_default_str();
  cum->add_option("--b", cum_b)->capture_default_str();
  cum->add_option("--tol", cum_tol, "quadrature tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sim->parsed()) {
      const Model m = sim_mf.build();
      const Sample s = iid_sample(m, sim_n, Rng(sim_seed).child(0));
      MetaList meta = base_meta("simulate");
      sim_mf.append_meta(meta);
      meta.emplace_back("n", fmt(sim_n));
      meta.emplace_back("seed", std::to_string(sim_seed));
      write_spike_csv(sim_out, s, meta);
      std::cout << "wrote " << sim_out << " (" << s.size() << " trials)\n";
    }

    if (tst->parsed()) {
      const SpikeReadReport rep = read_spike_csv(tst_input);
      for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
      int out_of_range = 0;
      for (const auto& tp : rep.sample)
        for (const Train* tr : {&tp.x1, &tp.x2})
          for (double t : *tr)
            if (t < 0 || t > tst_T) ++out_of_range;
      if (out_of_range > 0)
        std::cerr << "warning: " << out_of_range
                  << " spike times outside [0, T]; check --T\n";
      const TestResult r =
          permutation_test(rep.sample, tst_delta, tst_alpha, tst_B,
                           Rng(tst_seed).child(1), !tst_emit_null.empty());
      std::cout << fmt(r.statistic) << "," << fmt(r.quantile) << ","
                << fmt(r.p_value) << "," << (r.reject ? 1 : 0) << "\n";
      if (!tst_emit_null.empty()) {
        CsvDoc doc;
        doc.meta = base_meta("test");
        doc.meta.emplace_back("input", tst_input);
        doc.meta.emplace_back("delta", fmt(tst_delta));
        doc.meta.emplace_back("alpha", fmt(tst_alpha));
        doc.meta.emplace_back("B", fmt(tst_B));
        doc.meta.emplace_back("seed", std::to_string(tst_seed));
        doc.add_timestamp();
        doc.header = "null_statistic";
        for (double v : r.null_values) doc.rows.push_back(fmt(v));
        doc.write(tst_emit_null);
      }
    }

    if (anaj->parsed()) {
      const NoiseSpec noise = NoiseSpec::parse(aj_noise);
      const double lambda_max = std::max({aj_l1, aj_l2, aj_eta});
      const double C = aj_ccal ? tracked_concentration_constant() : aj_C;
      CsvDoc doc;
      doc.meta = base_meta("analytic-jitter");
      doc.meta.emplace_back("lambda1", fmt(aj_l1));
      doc.meta.emplace_back("lambda2", fmt(aj_l2));
      doc.meta.emplace_back("eta", fmt(aj_eta));
      doc.meta.emplace_back("T", fmt(aj_T));
      doc.meta.emplace_back("noise", aj_noise);
      doc.meta.emplace_back("n", fmt(aj_n));
      doc.meta.emplace_back("alpha", fmt(aj_alpha));
      doc.meta.emplace_back("beta", fmt(aj_beta));
      doc.meta.emplace_back("C", fmt(C));
      doc.meta.emplace_back("Cprime", fmt(aj_Cp));
      doc.meta.emplace_back(
          "note", "crit_rhs and n_min are scaling bounds up to C and Cprime");
      doc.header = "delta,p,m1,delta_phi,v_indep,crit_rhs,n_min";
      for (double d : parse_grid(aj_deltas)) {
        const NoiseMoments nm = noise_moments(noise, d);
        warn_notes(jitter_hypothesis_notes(lambda_max, aj_eta, d, aj_T, aj_n,
                                           aj_alpha, aj_beta));
        std::ostringstream row;
        row << fmt(d) << "," << fmt(nm.p) << "," << fmt(nm.m1) << ","
            << fmt(delta_phi_jitter(aj_eta, aj_T, noise, d)) << ","
            << fmt(v_indep_jitter(aj_l1, aj_l2, aj_eta, d, aj_T)) << ","
            << fmt(crit_rhs_jitter(lambda_max, d, aj_T, aj_n, aj_alpha, aj_beta, C))
            << ","
            << fmt(n_min_jitter(lambda_max, aj_eta, d, aj_T, nm.p, aj_alpha,
                                aj_beta, aj_Cp));
        doc.rows.push_back(row.str());
      }
      if (aj_out.empty()) {
        std::cout << doc.to_string();
      } else {
        doc.add_timestamp();
        doc.write(aj_out);
      }
    }

    if (anah->parsed()) {
      CsvDoc doc;
      doc.meta = base_meta("analytic-hawkes");
      doc.meta.emplace_back("nu", fmt(ah_nu));
      doc.meta.emplace_back("a", fmt(ah_a));
      doc.meta.emplace_back("b", fmt(ah_b));
      doc.meta.emplace_back("M", fmt(ah_M));
      doc.meta.emplace_back("T", fmt(ah_T));
      doc.meta.emplace_back("n", fmt(ah_n));
      doc.meta.emplace_back("alpha", fmt(ah_alpha));
      doc.meta.emplace_back("beta", fmt(ah_beta));
      doc.meta.emplace_back("C", fmt(ah_C));
      doc.meta.emplace_back("Cprime", fmt(ah_Cp));
      doc.meta.emplace_back(
          "note",
          "gap_*, crit_rhs and n_min are scaling bounds up to C and Cprime");
      doc.header =
          "delta,delta_phi,delta_phi_lb,v0,gap_indep,gap_obs,crit_rhs,n_min";
      const double ell = ah_a / ah_b;
      for (double d : parse_grid(ah_deltas)) {
        warn_notes(hawkes_hypothesis_notes(ah_nu, ah_a, ah_b, ah_M, d, ah_T,
                                           ah_n, ah_alpha, ah_beta));
        std::ostringstream row;
        row << fmt(d) << "," << fmt(delta_phi_hawkes(ah_nu, ah_a, ah_b, ah_M, d, ah_T))
            << "," << fmt(delta_phi_hawkes_lb(ah_nu, ah_a, ah_b, ah_M, d, ah_T))
            << "," << fmt(v0(ah_nu, ell, d, ah_T)) << ","
            << fmt(gap_indep(ah_nu, ah_a, ah_b, ah_M, d, ah_T, ah_C)) << ","
            << fmt(gap_obs(ah_nu, ah_a, ah_b, ah_M, d, ah_T, ah_C)) << ","
            << fmt(crit_rhs_hawkes(ah_nu, ah_a, ah_b, ah_M, d, ah_T, ah_n,
                                   ah_alpha, ah_beta, ah_C))
            << ","
            << fmt(n_min_hawkes(ah_nu, ah_a, ah_b, ah_M, d, ah_T, ah_alpha,
                                ah_beta, ah_Cp));
        doc.rows.push_back(row.str());
      }
      if (ah_out.empty()) {
        std::cout << doc.to_string();
      } else {
        doc.add_timestamp();
        doc.write(ah_out);
      }
    }

    if (pow_->parsed()) {
      if (pw_full) {
        if (pw_nsim_opt->count() == 0) pw_N = 10000;
        if (pw_b_opt->count() == 0) pw_B = 5000;
      }
      const Model m = pw_mf.build();
      const TestConfig tc{pw_delta, pw_alpha, pw_B};
      const std::vector<double> grid = parse_grid(pw_grid);
      const auto points =
          power_curve(m, tc, pw_vary, grid, pw_n, pw_N, pw_seed, pw_threads);
      CsvDoc doc;
      doc.meta = base_meta("power");
      pw_mf.append_meta(doc.meta);
      doc.meta.emplace_back("vary", pw_vary);
      doc.meta.emplace_back("grid", pw_grid);
      doc.meta.emplace_back("n", fmt(pw_n));
      doc.meta.emplace_back("N_sim", fmt(pw_N));
      doc.meta.emplace_back("B", fmt(pw_B));
      doc.meta.emplace_back("alpha", fmt(pw_alpha));
      doc.meta.emplace_back("delta", fmt(pw_delta));
      doc.meta.emplace_back("seed", std::to_string(pw_seed));
      doc.add_timestamp();
      doc.header = "param,value,power,ci_half,N_sim,n,B,alpha";
      for (const auto& p : points) {
        std::ostringstream row;
        row << p.param << "," << fmt(p.value) << "," << fmt(p.power) << ","
            << fmt(p.ci_half) << "," << p.N_sim << "," << p.n << "," << p.B
            << "," << fmt(p.alpha);
        doc.rows.push_back(row.str());
      }
      doc.write(pw_out);
      if (!pw_svg.empty()) {
        SvgSeries s;
        for (const auto& p : points) {
          s.x.push_back(p.value);
          s.y.push_back(p.power);
          s.err.push_back(p.ci_half);
        }
        s.label = "power";
        write_svg_curves(pw_svg, {s}, "estimated power vs " + pw_vary, pw_vary,
                         "power");
      }
      std::cout << "wrote " << pw_out << " (" << points.size() << " grid points)\n";
    }

    if (t1->parsed()) {
      if (t1_mf.model == "jitter" && t1_mf.eta != 0.0) {
        std::cerr << "warning: typeI forces eta = 0 (null hypothesis)\n";
        t1_mf.eta = 0.0;
      }
      const Model m = t1_mf.build();
      const TestConfig tc{t1_delta, t1_alpha, t1_B};
      PowerPoint p = type_i_experiment(m, tc, t1_n, t1_N, t1_seed, t1_threads);
      p.param = "typeI";
      CsvDoc doc;
      doc.meta = base_meta("typeI");
      t1_mf.append_meta(doc.meta);
      doc.meta.emplace_back("n", fmt(t1_n));
      doc.meta.emplace_back("N_sim", fmt(t1_N));
      doc.meta.emplace_back("B", fmt(t1_B));
      doc.meta.emplace_back("alpha", fmt(t1_alpha));
      doc.meta.emplace_back("delta", fmt(t1_delta));
      doc.meta.emplace_back("seed", std::to_string(t1_seed));
      doc.add_timestamp();
      doc.header = "param,value,power,ci_half,N_sim,n,B,alpha";
      std::ostringstream row;
      row << p.param << "," << fmt(t1_alpha) << "," << fmt(p.power) << ","
          << fmt(p.ci_half) << "," << p.N_sim << "," << p.n << "," << p.B << ","
          << fmt(p.alpha);
      doc.rows.push_back(row.str());
      doc.write(t1_out);
      std::cout << "rejection rate " << fmt(p.power) << " (ci half-width "
                << fmt(p.ci_half) << ")\n";
    }

    if (ns->parsed()) {
      if (ns_full) {
        if (ns_nsim_opt->count() == 0) ns_N = 10000;
        if (ns_b_opt->count() == 0) ns_B = 5000;
      }
      if (ns_mf.model == "hawkes") {
        const auto notes = hawkes_hypothesis_notes(
            ns_mf.nu, ns_mf.a, ns_mf.b, ns_mf.M, ns_delta, ns_mf.T, 0,
            ns_alpha, ns_beta);
        if (!notes.empty()) {
          std::string joined;
          for (const auto& n : notes) joined += "\n  " + n;
          throw std::runtime_error(
              "nstar: planning requires the guarantee's hypotheses:" + joined);
        }
      }
      const TestConfig tc{ns_delta, ns_alpha, ns_B};
      const NStarSearch search{ns_step, ns_nmax};
      const std::vector<double> grid = parse_grid(ns_grid);
      CsvDoc doc;
      doc.meta = base_meta("nstar");
      ns_mf.append_meta(doc.meta);
      doc.meta.emplace_back("M_grid", ns_grid);
      doc.meta.emplace_back("beta", fmt(ns_beta));
      doc.meta.emplace_back("step", fmt(ns_step));
      doc.meta.emplace_back("n_max", fmt(ns_nmax));
      doc.meta.emplace_back("N_sim", fmt(ns_N));
      doc.meta.emplace_back("B", fmt(ns_B));
      doc.meta.emplace_back("alpha", fmt(ns_alpha));
      doc.meta.emplace_back("delta", fmt(ns_delta));
      doc.meta.emplace_back("seed", std::to_string(ns_seed));
      doc.add_timestamp();
      doc.header = "M,n_star,probes";
      if (ns_mf.model != "hawkes")
        throw std::runtime_error("nstar: the M sweep needs --model hawkes");
      std::vector<double> Ms, stars;
      bool saturated = false;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const int Mv = static_cast<int>(std::lround(grid[g]));
        ModelFlags mf = ns_mf;
        mf.M = Mv;
        const Model m = mf.build();
        const NStarResult r = find_n_star_mc(
            m, tc, ns_beta, search, ns_N,
            splitmix64(ns_seed + 0x4d677269ull * (g + 1)), ns_threads);
        if (!r.achieved) saturated = true;
        doc.rows.push_back(std::to_string(Mv) + "," +
                           (r.achieved ? std::to_string(r.n_star)
                                       : std::string("saturated")) +
                           "," + probes_field(r.probes));
        if (r.achieved) {
          Ms.push_back(grid[g]);
          stars.push_back(r.n_star);
        }
      }
      doc.write(ns_out);
      if (ns_fit && Ms.size() >= 2) {
        const QuadFit f = fit_quadratic(Ms, stars);
        std::cout << "fit: n* ~ " << fmt(f.c0) << " + " << fmt(f.c1) << " * M^2\n";
      }
      std::cout << "wrote " << ns_out << "\n";
      if (saturated) {
        std::cerr << "error: target power not reached by n_max for some M "
                     "(row marked 'saturated')\n";
        return 2;
      }
    }

    if (den->parsed()) {
      const auto trees = enumerate_dendrograms(den_l);
      const auto classes = class_multiplicities(den_l);
      std::cout << "l=" << den_l << " dendrograms=" << trees.size()
                << " (closed count " << dendrogram_count(den_l) << ") classes="
                << classes.size() << "\n";
      for (const auto& [sig, count] : classes)
        std::cout << "  " << sig << "  x" << count << "\n";
      if (!den_emit.empty()) {
        std::ofstream f(den_emit);
        if (!f) throw std::runtime_error("cannot open: " + den_emit);
        for (const auto& d : trees) f << d.label_string() << "\n";
        std::cout << "wrote " << den_emit << "\n";
      }
    }

    if (cum->parsed()) {
      const std::vector<double> times = parse_grid(cum_times);
      if (static_cast<int>(times.size()) != cum_l)
        throw std::runtime_error("cumulant: --times must list exactly l values");
      std::cout << fmt(cumulant_density(cum_l, times, cum_mu, cum_a, cum_b,
                                        cum_tol))
                << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace synchro
