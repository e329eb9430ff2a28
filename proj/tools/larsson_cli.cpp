#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "larsson/branching.hpp"
#include "larsson/cantor.hpp"
#include "larsson/diffset.hpp"
#include "larsson/errors.hpp"
#include "larsson/kernel.hpp"
#include "larsson/params.hpp"
#include "larsson/render.hpp"
#include "larsson/run_config.hpp"
#include "larsson/spectral.hpp"
#include "larsson/type_space.hpp"

namespace fs = std::filesystem;
using namespace larsson;

namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Context {
  RunConfig cfg;
  fs::path out;

  Params params() const { return cfg.params(); }
  double epsilon(const Params& p) const {
    return cfg.epsilon ? *cfg.epsilon : default_epsilon(p);
  }
  double step(const Params& p) const {
    return cfg.grid_step > 0.0 ? cfg.grid_step : derive(p).t / 10.0;
  }
};

void emit_config(const Context& ctx) {
  write_file(ctx.out / "resolved_config.json", config_to_json(ctx.cfg));
}

int cmd_classify(Context& ctx) {
  const Params p = ctx.params();
  const DerivedConstants k = derive(p);
  nlohmann::json j;
  j["a"] = p.a;
  j["b"] = p.b;
  j["t"] = k.t;
  j["c"] = k.c;
  j["fourA"] = k.four_a;
  j["dimSum"] = k.dim_sum;
  j["rho1"] = k.rho1;
  j["polynomial"] = region_polynomial(p);
  j["region"] = to_string(classify(p));
  const std::string text = j.dump(2);
  write_file(ctx.out / "classify.json", text);
  std::cout << text << "\n";
  return 0;
}

int cmd_typespace(Context& ctx) {
  const Params p = ctx.params();
  const double eps = ctx.epsilon(p);
  const TypeSpace T = build_type_space(p, eps);

  std::string comp_csv = "lo,hi,length\n";
  for (const Interval& c : T.components.parts()) {
    comp_csv += g17(c.lo) + "," + g17(c.hi) + "," + g17(c.length()) + "\n";
  }
  write_file(ctx.out / "components.csv", comp_csv);

  std::string ledger_csv = "address,u,v,length\n";
  for (const RemovalRecord& r : T.ledger) {
    ledger_csv += r.address + "," + g17(r.u) + "," + g17(r.v) + "," +
                  g17(r.v - r.u) + "\n";
  }
  write_file(ctx.out / "ledger.csv", ledger_csv);

  const KappaReport kr = kappa_report(p, T);
  nlohmann::json j;
  j["epsilon"] = eps;
  j["epsilon_bound"] = epsilon_bound(p);
  j["l"] = T.level_l;
  j["rho_seq"] = T.rho_seq;
  j["components"] = T.components.size();
  j["total_length"] = T.components.total_length();
  j["kappa_scanned"] = kr.scanned;
  j["kappa_stripe_width"] = kr.stripe_width;
  if (T.level_l == 0) {
    j["kappa1"] = kr.simple_kappa1;
    j["kappa2_as_printed"] = kr.simple_kappa2;
  } else {
    j["kappa_case_a"] = kr.general_case_a;
    j["kappa_case_c"] = kr.general_case_c;
  }
  j["support_bound"] = support_bound(p, T);
  const std::string text = j.dump(2);
  write_file(ctx.out / "typespace.json", text);
  std::cout << text << "\n";
  return 0;
}

int cmd_spectrum(Context& ctx) {
  const Params p = ctx.params();
  const double eps = ctx.epsilon(p);
  const double step = ctx.step(p);
  const TypeSpace T = build_type_space(p, eps);
  const KernelMatrix km = assemble(build_grid(T, step), p, T);
  SpectralResult s = dominant_eigen(km);
  const PositivityReport pos = uniform_positivity(km);
  const std::vector<double> errs = harris_check(km, s, pos.n0 + 50);

  std::string eig_csv = "node,weight,mu,nu\n";
  for (Eigen::Index i = 0; i < km.grid.nodes.size(); ++i) {
    eig_csv += g17(km.grid.nodes[i]) + "," + g17(km.grid.weights[i]) + "," +
               g17(s.mu[i]) + "," + g17(s.nu[i]) + "\n";
  }
  write_file(ctx.out / "eigenfunctions.csv", eig_csv);

  std::string harris_csv = "n,max_rel_err\n";
  for (std::size_t i = 0; i < errs.size(); ++i) {
    harris_csv += std::to_string(i + 1) + "," + g17(errs[i]) + "\n";
  }
  write_file(ctx.out / "harris.csv", harris_csv);

  // rho as a function of epsilon (fractions of the bound) and of step.
  std::string sweep_csv = "epsilon,step,rho\n";
  for (double frac : {0.2, 0.4, 0.6, 0.8}) {
    const double e = frac * epsilon_bound(p);
    const TypeSpace Te = build_type_space(p, e);
    const SpectralResult se = dominant_eigen(assemble(build_grid(Te, step), p, Te));
    sweep_csv += g17(e) + "," + g17(step) + "," + g17(se.rho) + "\n";
  }
  const SpectralResult s_half =
      dominant_eigen(assemble(build_grid(T, step / 2.0), p, T));
  sweep_csv += g17(eps) + "," + g17(step / 2.0) + "," + g17(s_half.rho) + "\n";
  write_file(ctx.out / "rho_sweep.csv", sweep_csv);

  nlohmann::json j;
  j["epsilon"] = eps;
  j["step"] = step;
  j["nodes"] = km.grid.nodes.size();
  j["rho"] = s.rho;
  j["rho_half_step"] = s_half.rho;
  j["iterations"] = s.iterations;
  j["residual"] = s.residual;
  j["n0"] = pos.n0;
  j["m_n0_min"] = pos.min_value;
  j["m_n0_max"] = pos.max_value;
  j["delta_estimate"] = s.delta_estimate;
  j["mu_ratio"] = s.mu.maxCoeff() / s.mu.minCoeff();
  const std::string text = j.dump(2);
  write_file(ctx.out / "spectrum.json", text);
  std::cout << text << "\n";
  return 0;
}

int cmd_branching(Context& ctx) {
  const Params p = ctx.params();
  const TypeSpace T = build_type_space(p, ctx.epsilon(p));
  const KernelMatrix km = assemble(build_grid(T, ctx.step(p)), p, T);
  const SpectralResult s = dominant_eigen(km);

  const double K = ctx.cfg.K ? *ctx.cfg.K : default_K(T);
  const std::vector<Interval> sets = {{-K, 0.0},
                                      {0.0, K},
                                      {-K, K},
                                      {T.components.min(), T.components.max()}};
  std::string csv = "x,n,set_lo,set_hi,mean,std_error,survival,W_q10,W_q50,W_q90\n";
  const int nmax = ctx.cfg.depth;
  for (int n = 1; n <= nmax; ++n) {
    SimulationResult res;
    if (ctx.cfg.mode == "iid") {
      res = simulate_counts(ctx.cfg.x, n, sets, ctx.cfg.trials, ctx.cfg.seed,
                            p, T);
    } else {
      res = simulate_counts_shared(ctx.cfg.x, n, sets, ctx.cfg.trials,
                                   ctx.cfg.seed, p, T);
    }
    const double rho_n = std::pow(s.rho, n);
    for (const SetCounts& sc : res.sets) {
      std::vector<double> w(sc.counts.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = sc.counts[i] / rho_n;
      std::sort(w.begin(), w.end());
      auto quant = [&](double q) {
        return w.empty() ? 0.0 : w[static_cast<std::size_t>(q * (w.size() - 1))];
      };
      csv += g17(ctx.cfg.x) + "," + std::to_string(n) + "," + g17(sc.set.lo) +
             "," + g17(sc.set.hi) + "," + g17(sc.mean()) + "," +
             g17(sc.std_error()) + "," +
             g17(static_cast<double>(res.surviving_trials) / res.trials) + "," +
             g17(quant(0.1)) + "," + g17(quant(0.5)) + "," + g17(quant(0.9)) +
             "\n";
    }
  }
  write_file(ctx.out / "branching.csv", csv);
  std::cout << "rho = " << s.rho << ", table written to "
            << (ctx.out / "branching.csv") << "\n";
  return 0;
}

int cmd_mainlemma(Context& ctx) {
  const Params p = ctx.params();
  const TypeSpace T = build_type_space(p, ctx.epsilon(p));
  const SpectralResult s =
      dominant_eigen(assemble(build_grid(T, ctx.step(p)), p, T));
  const double K = ctx.cfg.K ? *ctx.cfg.K : default_K(T);

  std::vector<int> nrange;
  for (int i = 0; i < ctx.cfg.nspan; ++i) nrange.push_back(ctx.cfg.N + i);
  std::vector<double> xgrid;
  for (int i = 0; i < 11; ++i) xgrid.push_back(-K + 2.0 * K * i / 10.0);

  const MainLemmaEstimate est = estimate_main_lemma(
      p, T, s.rho, K, ctx.cfg.delta, nrange, xgrid, ctx.cfg.trials, ctx.cfg.seed);

  std::string csv = "x,n,probability\n";
  for (std::size_t xi = 0; xi < est.xgrid.size(); ++xi) {
    for (std::size_t ni = 0; ni < est.nrange.size(); ++ni) {
      csv += g17(est.xgrid[xi]) + "," + std::to_string(est.nrange[ni]) + "," +
             g17(est.table[xi][ni]) + "\n";
    }
  }
  write_file(ctx.out / "mainlemma.csv", csv);

  nlohmann::json j;
  j["K"] = est.K;
  j["delta"] = est.delta;
  j["N"] = est.N;
  j["rho"] = s.rho;
  j["trials"] = ctx.cfg.trials;
  j["qhat"] = est.qhat;
  j["ci_half_width"] = est.ci_half_width;
  j["p24_at_0"] = estimate_p24(0.0, K, ctx.cfg.trials, ctx.cfg.seed, p, T);
  const std::string text = j.dump(2);
  write_file(ctx.out / "mainlemma.json", text);
  std::cout << text << "\n";
  return 0;
}

int cmd_diffset(Context& ctx) {
  const Params p = ctx.params();
  const double K = ctx.cfg.K ? *ctx.cfg.K : 0.124;
  const ProductMode mode =
      ctx.cfg.mode == "iid" ? ProductMode::Iid : ProductMode::Shared;
  const CoverageEstimate est = estimate_interval_prob(
      p, K, ctx.cfg.N, ctx.cfg.depth, ctx.cfg.trials, ctx.cfg.seed, mode);

  std::string csv = "depth,covered_fraction,mean_union_length,length_bound\n";
  for (int n = 1; n <= ctx.cfg.depth; ++n) {
    csv += std::to_string(n) + "," +
           g17(static_cast<double>(
                   est.covered_by_depth[static_cast<std::size_t>(n - 1)]) /
               est.trials) +
           "," + g17(est.mean_union_length[static_cast<std::size_t>(n - 1)]) +
           "," + g17(2.0 * std::pow(4.0 * p.a, n)) + "\n";
  }
  write_file(ctx.out / "coverage.csv", csv);

  nlohmann::json j;
  j["K"] = K;
  j["N"] = ctx.cfg.N;
  j["depth"] = ctx.cfg.depth;
  j["trials"] = est.trials;
  j["mode"] = ctx.cfg.mode;
  j["probability"] = est.probability;
  j["ci_low"] = est.ci_low;
  j["ci_high"] = est.ci_high;
  j["monotonicity_violations"] = est.monotonicity_violations;
  const std::string text = j.dump(2);
  write_file(ctx.out / "diffset.json", text);
  std::cout << text << "\n";
  return 0;
}

int cmd_bound(Context& ctx) {
  const BoundResult res = palis_lower_bound(ctx.cfg.q, ctx.cfg.delta,
                                            ctx.cfg.rho, ctx.cfg.N, ctx.cfg.kmax);
  nlohmann::json j;
  j["q"] = ctx.cfg.q;
  j["delta"] = ctx.cfg.delta;
  j["rho"] = ctx.cfg.rho;
  j["N"] = ctx.cfg.N;
  j["kmax"] = ctx.cfg.kmax;
  j["value"] = res.value;
  j["divergent"] = res.divergent;
  j["first_tail_k"] = res.first_tail_k;
  j["factors"] = res.factors;
  const std::string text = j.dump(2);
  write_file(ctx.out / "bound.json", text);
  std::cout << text << "\n";
  return 0;
}

int cmd_render_region(Context& ctx) {
  const Params p = ctx.params();
  RenderBundle bundle;
  bundle.params = &p;
  write_file(ctx.out / "region.svg", render(bundle, RenderKind::Region));
  std::cout << "wrote " << (ctx.out / "region.svg") << "\n";
  return 0;
}

int cmd_render_squares(Context& ctx) {
  const Params p = ctx.params();
  const int depth = std::min(ctx.cfg.depth, 6);
  OffsetTree t1(p, depth, ctx.cfg.seed, 1);
  OffsetTree t2(p, depth, ctx.cfg.seed, 2);
  RenderBundle bundle;
  bundle.params = &p;
  bundle.tree1 = &t1;
  bundle.tree2 = &t2;
  bundle.depth = depth;
  bundle.x = ctx.cfg.x;
  write_file(ctx.out / "squares.svg", render(bundle, RenderKind::Squares));
  write_file(ctx.out / "cantor_levels.svg",
             render(bundle, RenderKind::CantorLevels));
  write_file(ctx.out / "tree1.json", t1.to_json());
  write_file(ctx.out / "tree2.json", t2.to_json());
  std::cout << "wrote " << (ctx.out / "squares.svg") << "\n";
  return 0;
}

int cmd_render_kernel(Context& ctx) {
  const Params p = ctx.params();
  const TypeSpace T = build_type_space(p, ctx.epsilon(p));
  RenderBundle bundle;
  bundle.params = &p;
  bundle.typespace = &T;
  write_file(ctx.out / "kernel_stripes.svg",
             render(bundle, RenderKind::KernelStripes));

  // Heatmap export on a uniform grid over [-1, 1]^2.
  const int cells = 200;
  std::string csv = "x,y,m\n";
  for (int i = 0; i <= cells; ++i) {
    const double x = -1.0 + 2.0 * i / cells;
    for (int jy = 0; jy <= cells; ++jy) {
      const double y = -1.0 + 2.0 * jy / cells;
      csv += g17(x) + "," + g17(y) + "," + g17(kernel_m(x, y, p, T)) + "\n";
    }
  }
  write_file(ctx.out / "kernel_heatmap.csv", csv);
  std::cout << "wrote " << (ctx.out / "kernel_stripes.svg") << "\n";
  return 0;
}

int dispatch(const std::string& command, Context& ctx) {
  fs::create_directories(ctx.out);
  emit_config(ctx);
  if (command == "classify") return cmd_classify(ctx);
  if (command == "typespace") return cmd_typespace(ctx);
  if (command == "spectrum") return cmd_spectrum(ctx);
  if (command == "branching") return cmd_branching(ctx);
  if (command == "mainlemma") return cmd_mainlemma(ctx);
  if (command == "diffset") return cmd_diffset(ctx);
  if (command == "bound") return cmd_bound(ctx);
  if (command == "render-region") return cmd_render_region(ctx);
  if (command == "render-squares") return cmd_render_squares(ctx);
  if (command == "render-kernel") return cmd_render_kernel(ctx);
  throw UnknownCommand("unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Cantor set difference experiments"};
  app.allow_extras(false);

  std::string command;
  app.add_option("command", command,
                 "classify | typespace | spectrum | branching | mainlemma | "
                 "diffset | bound | render-region | render-squares | "
                 "render-kernel")
      ->required();

  std::string config_path;
  std::optional<double> a, b, epsilon, K;
  std::optional<double> grid_step, delta, x, q, rho;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials, depth, N, nspan, kmax, workers;
  std::optional<std::string> mode, out_dir;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--a", a, "contraction ratio");
  app.add_option("--b", b, "edge gap");
  app.add_option("--epsilon", epsilon, "type-space shrink");
  app.add_option("--grid-step", grid_step, "quadrature cell width");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--trials", trials, "Monte Carlo trials");
  app.add_option("--depth", depth, "construction depth / generations");
  app.add_option("--K", K, "nice-intersection half-width");
  app.add_option("--delta", delta, "count threshold coefficient");
  app.add_option("--N", N, "base generation / subdivision parameter");
  app.add_option("--nspan", nspan, "number of generations tested from N");
  app.add_option("--x", x, "start type / line intercept");
  app.add_option("--q", q, "bound input probability");
  app.add_option("--rho", rho, "bound input eigenvalue");
  app.add_option("--kmax", kmax, "bound product truncation");
  app.add_option("--workers", workers, "thread count (0 = all)");
  app.add_option("--mode", mode, "shared | iid");
  app.add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);

    Context ctx;
    if (!config_path.empty())
      ctx.cfg = config_from_json(read_file(config_path));
    if (a) ctx.cfg.a = *a;
    if (b) ctx.cfg.b = *b;
    if (epsilon) ctx.cfg.epsilon = *epsilon;
    if (grid_step) ctx.cfg.grid_step = *grid_step;
    if (seed) ctx.cfg.seed = *seed;
    if (trials) ctx.cfg.trials = *trials;
    if (depth) ctx.cfg.depth = *depth;
    if (K) ctx.cfg.K = *K;
    if (delta) ctx.cfg.delta = *delta;
    if (N) ctx.cfg.N = *N;
    if (nspan) ctx.cfg.nspan = *nspan;
    if (x) ctx.cfg.x = *x;
    if (q) ctx.cfg.q = *q;
    if (rho) ctx.cfg.rho = *rho;
    if (kmax) ctx.cfg.kmax = *kmax;
    if (workers) ctx.cfg.workers = *workers;
    if (mode) ctx.cfg.mode = *mode;
    if (out_dir) ctx.cfg.out_dir = *out_dir;
    if (ctx.cfg.mode != "shared" && ctx.cfg.mode != "iid")
      throw ParseError("mode must be 'shared' or 'iid'");

#ifdef _OPENMP
    if (ctx.cfg.workers > 0) omp_set_num_threads(ctx.cfg.workers);
#endif
    ctx.out = ctx.cfg.out_dir;
    return dispatch(command, ctx);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "runtime invariant violation: " << e.what() << "\n";
    return 4;
  }
}
