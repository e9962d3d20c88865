// Batch front-end: generate spaces, compute distances, run verification
// suites, and sweep the family grid.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ghspace/constructions.hpp"
#include "ghspace/core.hpp"
#include "ghspace/family.hpp"
#include "ghspace/gh.hpp"
#include "ghspace/io.hpp"
#include "ghspace/pointed.hpp"
#include "ghspace/random.hpp"
#include "ghspace/spider.hpp"

using namespace ghspace;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<std::size_t> parse_indices(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
  return out;
}

struct SuiteResult {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t failures = 0;
};

void print_result(const SuiteResult& r) {
  std::cout << (r.failures == 0 ? "[PASS] " : "[FAIL] ") << r.name
            << ": trials=" << r.trials << " seed=" << r.seed
            << " failures=" << r.failures << "\n";
}

SuiteResult suite_lipschitz(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult r{"lipschitz", trials, seed};
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, t);
    auto a = random_spider_params(rng, 8);
    auto b = random_spider_params(rng, 8);
    auto gap = lipschitz_gap(a, b, 32);
    if (!(gap.lhs <= gap.rhs + 1e-12)) ++r.failures;
  }
  return r;
}

SuiteResult suite_fingerprint(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult r{"fingerprint", trials, seed};
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, t);
    std::uniform_int_distribution<std::size_t> legs_d(1, 10), grid_d(4, 16);
    std::uniform_real_distribution<double> scale_d(0.5, 4.0);
    const std::size_t legs = legs_d(rng);
    const std::size_t grid = grid_d(rng);
    const double K = scale_d(rng);

    auto a = random_spider_params(rng, legs);
    bool ok = true;
    try {
      auto fp = fingerprint(build_spider(a, grid, K).space);
      ok = std::abs(fp.K - K) <= 1e-9 * K && fp.a.size() == legs;
      for (std::size_t i = 0; ok && i < legs; ++i)
        ok = std::abs(fp.a[i] - a.a[i]) <= 1e-9 * a.a[i];

      // separation against an independent parameter point
      auto b = random_spider_params(rng, legs);
      if (ok && tau(a, b) >= 1e-6) {
        auto fb = fingerprint(build_spider(b, grid, K).space);
        double sep = std::abs(fp.K - fb.K);
        for (std::size_t i = 0; i < legs; ++i)
          sep = std::max(sep, std::abs(fp.a[i] - fb.a[i]));
        ok = sep >= 1e-7;
      }
    } catch (const RecoveryError&) {
      ok = false;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

SuiteResult suite_gh_axioms(std::uint64_t trials, std::uint64_t seed,
                            std::size_t max_size) {
  SuiteResult r{"gh-axioms", trials, seed};
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, t);
    std::uniform_int_distribution<std::size_t> size_d(2, max_size);
    auto X = random_point_cloud(rng, size_d(rng), 2, 2.0, "x");
    auto Y = (t % 2) ? random_metric(rng, size_d(rng), 1.2, 1.8, "y")
                     : random_point_cloud(rng, size_d(rng), 3, 1.5, "y");
    bool ok = true;
    const auto ex = gh_exact(X, Y);
    ok = ok && gh_exact(Y, X).value == ex.value;
    ok = ok && gh_lower_diam(X, Y) <= ex.value;
    ok = ok && ex.value <= gh_upper_greedy(X, Y).value;
    if (t % 2 == 0) {
      auto Z = random_point_cloud(rng, size_d(rng), 2, 1.0, "z");
      ok = ok && gh_exact(X, Z).value <=
                     ex.value + gh_exact(Y, Z).value + 1e-12;
    }
    if (t % 4 == 0) {
      auto point = MetricSpace({"pt"}, {0.0});
      ok = ok && gh_exact(point, X).value == X.diameter() / 2.0;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

SuiteResult suite_lemma41(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult r{"lemma41", trials, seed};
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, t);
    std::uniform_int_distribution<std::size_t> n_d(4, 20);
    std::uniform_real_distribution<double> delta_d(0.01, 0.15);
    auto tr = random_rough_isometry(rng, n_d(rng), delta_d(rng), t % 2 == 0);
    bool ok = tr.cert.verdict;
    if (ok) {
      auto h = glue_from_rough_isometry(tr.cert, tr.X, tr.Y);
      const double bound =
          std::max(2 * tr.cert.eps,
                   tr.cert.R == kInf ? 0.0 : 1.0 / (tr.cert.R - tr.cert.eps));
      ok = check_admissible(h, tr.X, tr.Y, bound + 1e-9).admissible;
      ok = ok && pgh_upper(tr.cert) <= 0.5;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

SuiteResult suite_case1(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult r{"case1", trials, seed};
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, t);
    std::uniform_int_distribution<std::size_t> n_d(2, 4);
    const std::size_t nf = 2 + t % 2;
    std::vector<FactorMap> factors;
    double eps = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < nf; ++i) {
      auto tr = random_rough_isometry(rng, n_d(rng), 0.02 + 0.02 * i, false);
      ok = ok && tr.cert.verdict;
      eps = std::max(eps, tr.cert.eps);
      factors.push_back({tr.X, tr.Y, tr.cert.map});
    }
    if (ok) {
      auto prod = product_rough_isometry(factors, eps);
      ok = prod.cert.verdict;
      const double slack = std::sqrt(static_cast<double>(nf)) * eps;
      const auto& PX = prod.domain.space;
      const auto& PY = prod.target.space;
      for (std::size_t i = 0; ok && i < PX.size(); ++i)
        for (std::size_t j = 0; ok && j < PX.size(); ++j)
          ok = std::abs(PX(i, j) - PY(prod.map[i], prod.map[j])) <=
               slack + 1e-12;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

SuiteResult suite_case2(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult r{"case2", trials, seed};
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, t);
    std::uniform_real_distribution<double> eps_d(0.05, 0.3);
    const double eps = eps_d(rng);
    const std::size_t nf = 2 + t % 2;
    const std::size_t keep = t % nf;

    std::vector<PointedSpace> spaces;
    std::vector<double> radii;
    for (std::size_t i = 0; i < nf; ++i) {
      // Spread chosen so companion balls catch a few points.
      auto S = random_point_cloud(rng, 5, 2, i == keep ? 2.0 : 1.5 * eps,
                                  "f" + std::to_string(i));
      spaces.push_back({std::move(S), 0});
      radii.push_back(i == keep ? kInf : eps);
    }
    auto proj = projection_rough_isometry(spaces, radii, keep, 1.0, eps);
    bool ok = proj.cert.verdict;
    const double slack =
        2.0 * std::sqrt(static_cast<double>(nf - 1)) * eps;
    const auto& P = proj.product.space;
    const auto& Xi = spaces[keep].space;
    for (std::size_t i = 0; ok && i < P.size(); ++i)
      for (std::size_t j = 0; ok && j < P.size(); ++j)
        ok = std::abs(P(i, j) - Xi(proj.map[i], proj.map[j])) <=
             slack + 1e-12;
    if (!ok) ++r.failures;
  }
  return r;
}

SuiteResult suite_glue_restrict(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult r{"glue-restrict", trials, seed};
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, t);
    std::uniform_int_distribution<std::size_t> size_d(2, 7);
    const std::size_t nx = size_d(rng), ny = size_d(rng);
    auto X = random_point_cloud(rng, nx, 2, 2.0, "x");
    auto Y = random_metric(rng, ny, 1.2, 1.8, "y");
    std::uniform_int_distribution<std::size_t> px_d(0, nx - 1), py_d(0, ny - 1);
    const std::size_t px = px_d(rng), py = py_d(rng);
    auto h = glue(X, Y, X.label(px), Y.label(py));

    bool ok = validate(h, {.require_metric = true, .tri_tol = kComputedTriTol})
                  .valid();
    for (std::size_t i = 0; ok && i < nx; ++i)
      for (std::size_t j = 0; ok && j < nx; ++j) ok = h(i, j) == X(i, j);
    std::vector<std::size_t> ymap;
    for (std::size_t j = 0; j < ny; ++j)
      if (j != py) ymap.push_back(j);
    for (std::size_t a = 0; ok && a < ymap.size(); ++a)
      for (std::size_t b = 0; ok && b < ymap.size(); ++b)
        ok = h(nx + a, nx + b) == Y(ymap[a], ymap[b]);
    if (!ok) ++r.failures;
  }
  return r;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ghspace: finite metric spaces, spiders, and GH estimation"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate space files");
  gen->require_subcommand(1);

  std::string out_path;
  std::string a_csv;
  std::size_t spider_grid = 16;
  double spider_scale = 1.0;
  auto* gen_spider = gen->add_subcommand("spider", "discretized spider tree");
  gen_spider->add_option("--a", a_csv, "leg scales a_1,a_2,...")->required();
  gen_spider->add_option("--grid", spider_grid, "points per leg");
  gen_spider->add_option("--scale", spider_scale, "overall scale K");
  gen_spider->add_option("-o,--out", out_path, "output file")->required();
  gen_spider->callback([&] {
    SpiderParams p;
    p.a = parse_doubles(a_csv);
    auto sp = build_spider(p, spider_grid, spider_scale);
    nlohmann::json extra;
    extra["layout"] = spider_layout_to_json(sp.layout);
    extra["params"] = spider_params_to_json(p);
    save_space(sp.space, out_path, &extra);
    std::cout << "{\"points\": " << sp.space.size() << "}\n";
  });

  std::size_t sine_n = 1, sine_samples = 64;
  auto* gen_sine = gen->add_subcommand("sine", "sampled sine arc");
  gen_sine->add_option("--n", sine_n, "level (left end 2^-n)");
  gen_sine->add_option("--samples", sine_samples, "sample count");
  gen_sine->add_option("-o,--out", out_path, "output file")->required();
  gen_sine->callback([&] {
    auto X = sine_curve(sine_n, sine_samples);
    save_space(X, out_path);
    std::cout << "{\"points\": " << X.size() << "}\n";
  });

  std::vector<std::string> in_paths;
  auto* gen_product = gen->add_subcommand("product", "l2 product of two spaces");
  gen_product->add_option("inputs", in_paths, "two space files")
      ->expected(2)
      ->required();
  gen_product->add_option("-o,--out", out_path, "output file")->required();
  gen_product->callback([&] {
    auto P = l2_product(load_space(in_paths[0]), load_space(in_paths[1]));
    save_space(P, out_path);
    std::cout << "{\"points\": " << P.size() << "}\n";
  });

  std::string px_label, py_label;
  auto* gen_glue = gen->add_subcommand("glue", "wedge amalgamation");
  gen_glue->add_option("inputs", in_paths, "two space files")
      ->expected(2)
      ->required();
  gen_glue->add_option("--px", px_label, "wedge label in X")->required();
  gen_glue->add_option("--py", py_label, "wedge label in Y")->required();
  gen_glue->add_option("-o,--out", out_path, "output file")->required();
  gen_glue->callback([&] {
    auto G = glue(load_space(in_paths[0]), load_space(in_paths[1]), px_label,
                  py_label);
    save_space(G, out_path);
    std::cout << "{\"points\": " << G.size() << "}\n";
  });

  // ---- dist ---------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "distances and bounds");
  dist->require_subcommand(1);

  std::size_t cap = 6;
  auto* dist_gh = dist->add_subcommand("gh", "GH bounds (exact when small)");
  dist_gh->add_option("inputs", in_paths, "two space files")
      ->expected(2)
      ->required();
  dist_gh->add_option("--cap", cap, "exact-solver size cap");
  dist_gh->callback([&] {
    auto X = load_space(in_paths[0]);
    auto Y = load_space(in_paths[1]);
    nlohmann::json j;
    j["lower"] = gh_lower_diam(X, Y);
    auto up = gh_upper_greedy(X, Y);
    j["upper"] = up.value;
    if (X.size() <= cap && Y.size() <= cap) {
      auto ex = gh_exact(X, Y, cap);
      j["exact"] = ex.value;
      auto w = nlohmann::json::array();
      for (auto [i, k] : ex.witness.pairs) w.push_back({i, k});
      j["witness"] = std::move(w);
    }
    std::cout << j.dump() << "\n";
  });

  std::string a_idx, b_idx;
  auto* dist_h = dist->add_subcommand("hausdorff", "Hausdorff distance of subsets");
  dist_h->add_option("input", out_path, "ambient space file")->required();
  dist_h->add_option("--a", a_idx, "indices of A (comma-separated)")->required();
  dist_h->add_option("--b", b_idx, "indices of B (comma-separated)")->required();
  dist_h->callback([&] {
    auto Z = load_space(out_path);
    const double v = hausdorff(parse_indices(a_idx), parse_indices(b_idx), Z);
    std::cout << "{\"hausdorff\": " << fmt_double(v) << "}\n";
  });

  std::string cert_path;
  auto* dist_p = dist->add_subcommand("pgh-bound", "pointed GH bound of a certificate");
  dist_p->add_option("--cert", cert_path, "certificate json")->required();
  dist_p->callback([&] {
    std::ifstream in(cert_path);
    if (!in) throw std::runtime_error("cannot open " + cert_path);
    nlohmann::json j;
    in >> j;
    const double v = pgh_upper(cert_from_json(j));
    std::cout << "{\"bound\": " << fmt_double(v) << "}\n";
  });

  // ---- verify -------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "randomized verification suites");
  std::string suite;
  std::uint64_t trials = 100, seed = 42;
  std::size_t max_size = 5;
  verify
      ->add_option("suite", suite,
                   "lipschitz|fingerprint|gh-axioms|lemma41|case1|case2|"
                   "glue-restrict|all")
      ->required();
  verify->add_option("--trials", trials, "trial count");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--max-size", max_size, "max space size (gh-axioms)");
  verify->callback([&] {
    std::vector<SuiteResult> results;
    auto run = [&](const std::string& name) {
      if (name == "lipschitz") results.push_back(suite_lipschitz(trials, seed));
      else if (name == "fingerprint") results.push_back(suite_fingerprint(trials, seed));
      else if (name == "gh-axioms") results.push_back(suite_gh_axioms(trials, seed, max_size));
      else if (name == "lemma41") results.push_back(suite_lemma41(trials, seed));
      else if (name == "case1") results.push_back(suite_case1(trials, seed));
      else if (name == "case2") results.push_back(suite_case2(trials, seed));
      else if (name == "glue-restrict") results.push_back(suite_glue_restrict(trials, seed));
      else throw CLI::ValidationError("unknown suite '" + name + "'");
    };
    if (suite == "all") {
      for (const char* s : {"lipschitz", "fingerprint", "gh-axioms", "lemma41",
                            "case1", "case2", "glue-restrict"})
        run(s);
    } else {
      run(suite);
    }
    std::size_t failures = 0;
    for (const auto& r : results) {
      print_result(r);
      failures += r.failures;
    }
    if (failures) throw CLI::RuntimeError(2);
  });

  // ---- sweep --------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "family grid sweep");
  std::string config_path, csv_path;
  std::size_t sweep_grid = 0;
  sweep->add_option("config", config_path, "family config json")->required();
  sweep->add_option("--grid", sweep_grid, "lattice override");
  sweep->add_option("--out", csv_path, "CSV output path")->required();
  sweep->callback([&] {
    auto cfg = load_family_config(config_path);
    auto sel = select_branch(cfg, sweep_grid);
    auto rep = injectivity_sweep(cfg, sweep_grid, sel.k);

    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write " + csv_path);
    csv << "s1,s2,k,min_fingerprint_sep,continuity_bound,is_metric\n";
    for (const auto& row : rep.rows)
      csv << fmt_double(row.s[0]) << "," << fmt_double(row.s[1]) << ","
          << row.k << "," << fmt_double(row.min_fp_sep) << ","
          << fmt_double(row.continuity_bound) << ","
          << (row.is_metric ? 1 : 0) << "\n";

    nlohmann::json j;
    j["k"] = sel.k;
    j["threshold"] = sel.threshold;
    j["rows"] = rep.rows.size();
    j["min_fingerprint_sep"] = rep.min_separation;
    j["max_edge_bound"] = rep.max_edge_bound;
    j["metric_failures"] = rep.metric_failures;
    std::cout << j.dump() << "\n";
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
