// Command-line front end: validates datum files, generates root systems,
// runs the positive/negative decomposition test, analyses reflection
// subgroups, and exercises the rank-2 recurrence machinery.
//
// Exit codes are the machine contract: 0 = success / property holds,
// 1 = property fails or counterexample found, 2 = input error.

#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "pairedroots/pairedroots.hpp"

namespace pr = pairedroots;
using nlohmann::json;

namespace {

struct GlobalFlags {
  double eps = -1.0;  // < 0: keep the file / default tolerance
  int threads = 1;
  unsigned seed = 0;
};

pr::CoxeterDatum load_datum(const std::string& path, const GlobalFlags& flags) {
  pr::CoxeterDatum datum = pr::load_datum_file(path);
  if (flags.eps > 0.0) datum.tolerance = flags.eps;
  return datum;
}

int run_validate(const std::string& file, const GlobalFlags& flags) {
  pr::CoxeterDatum datum = load_datum(file, flags);
  pr::ValidationReport report = pr::validate(datum);
  std::cout << pr::validation_to_json(report).dump(2) << "\n";
  return report.ok() ? 0 : 1;
}

int run_roots(const std::string& file, int depth, int cap, const std::string& side, bool force,
              const GlobalFlags& flags) {
  pr::CoxeterDatum datum = load_datum(file, flags);
  if (!force && !pr::validate(datum).ok()) {
    std::cerr << "datum fails validation; use --force to generate anyway\n";
    return 2;
  }
  std::vector<int> sides;
  if (side == "1") sides = {1};
  else if (side == "2") sides = {2};
  else if (side == "both") sides = {1, 2};
  else {
    std::cerr << "--side must be 1, 2 or both\n";
    return 2;
  }
  for (int s : sides) {
    pr::RootGenOptions opt;
    opt.max_depth = depth;
    opt.cap = cap;
    opt.side = s;
    opt.allow_invalid = force;
    opt.threads = flags.threads;
    pr::SignedRootSet set = pr::generate_roots(datum, opt);
    for (std::size_t i = 0; i < set.pairs.size(); ++i)
      std::cout << pr::root_record_json(datum, set.pairs[i], set.signs[i]).dump() << "\n";
    std::cout << pr::rootset_summary_json(set).dump() << "\n";
  }
  return 0;
}

int run_decompose(const std::string& file, int depth, int cap, const GlobalFlags& flags) {
  pr::CoxeterDatum datum = load_datum(file, flags);
  pr::DecompositionResult result = pr::decomposition_check(datum, depth, cap, flags.threads);
  std::cout << pr::decomposition_to_json(datum, result).dump(2) << "\n";
  return result.holds ? 0 : 1;
}

int run_subgroup(const std::string& file, const std::string& roots_json, bool oracle, int depth,
                 const GlobalFlags& flags) {
  pr::CoxeterDatum datum = load_datum(file, flags);
  json coords = json::parse(roots_json);
  if (!coords.is_array() || coords.empty()) {
    std::cerr << "--roots expects a nonempty JSON array of coordinate arrays\n";
    return 2;
  }

  pr::SubgroupCaps caps;
  caps.root_depth = depth;
  pr::RootGenOptions opt;
  opt.max_depth = caps.root_depth;
  pr::SignedRootSet parent_roots = pr::generate_roots(datum, opt);

  std::vector<pr::RootPair> seeds;
  for (const json& c : coords) {
    pr::Vec v = c.get<pr::Vec>();
    int found = -1;
    for (std::size_t i = 0; i < parent_roots.pairs.size(); ++i)
      if (static_cast<int>(v.size()) == datum.dim1() &&
          pr::inf_dist(parent_roots.pairs[i].x, v) <= 1e-6) {
        found = static_cast<int>(i);
        break;
      }
    if (found < 0) {
      std::cerr << "root " << c.dump() << " is not in the generated parent system\n";
      return 2;
    }
    seeds.push_back(parent_roots.pairs[found]);
  }

  pr::ReflectionSubgroup sub = pr::subgroup_from_reflections(datum, seeds, caps);
  json report = pr::subgroup_report_json(sub);

  bool oracle_agrees = true;
  if (oracle) {
    std::vector<pr::Reflection> brute = pr::canonical_generators_bruteforce(sub);
    oracle_agrees = brute.size() == sub.delta.size();
    if (oracle_agrees)
      for (const pr::RootPair& d : sub.delta) {
        bool present = false;
        for (const pr::Reflection& t : brute)
          if (pr::classes_equal(pr::root_class(d.x), t.root_class)) present = true;
        if (!present) oracle_agrees = false;
      }
    report["oracle_agrees"] = oracle_agrees;
  }
  std::cout << report.dump(2) << "\n";
  return oracle_agrees ? 0 : 1;
}

int run_dihedral(bool has_gamma, double gamma, const std::string& cos_spec, bool order, bool braid,
                 int pcheck, const GlobalFlags& flags) {
  int braid_m = 0;
  if (has_gamma && !cos_spec.empty()) {
    std::cerr << "--gamma and --cos are mutually exclusive\n";
    return 2;
  }
  if (!has_gamma && cos_spec.empty()) {
    std::cerr << "one of --gamma or --cos is required\n";
    return 2;
  }
  if (!cos_spec.empty()) {
    auto slash = cos_spec.find('/');
    try {
      int k = std::stoi(cos_spec.substr(0, slash));
      int m = slash == std::string::npos ? 0 : std::stoi(cos_spec.substr(slash + 1));
      if (k <= 0 || m <= k) throw std::invalid_argument("range");
      gamma = std::cos(k * pr::kPi / m);
      braid_m = m;
    } catch (const std::exception&) {
      std::cerr << "--cos expects k/m with 0 < k < m\n";
      return 2;
    }
  }
  if (braid && braid_m == 0) {
    std::cerr << "--braid needs --cos k/m to fix the number of factors\n";
    return 2;
  }

  double eps = flags.eps > 0.0 ? flags.eps : pr::kDefaultTolerance;
  json out;
  out["schema"] = pr::kSchemaTag;
  out["gamma"] = gamma;

  try {
    pr::GammaClass cls = pr::classify_gamma(gamma, eps);
    switch (cls.kind) {
      case pr::GammaKind::CosPiOverM:
        out["classification"] = {{"kind", "cos_pi_over_m"}, {"m", cls.m}};
        break;
      case pr::GammaKind::AtLeastOne:
        out["classification"] = {{"kind", "at_least_one"}};
        break;
      case pr::GammaKind::Fails:
        out["classification"] = {{"kind", "fails"}, {"n", cls.n}};
        break;
    }
  } catch (const pr::Error&) {
    out["classification"] = {{"kind", "inconclusive"}};
  }

  bool ok = true;
  if (order) out["order"] = pr::order_to_json(pr::order_of_AB(gamma, eps));
  if (braid) {
    std::mt19937 rng(flags.seed);
    std::uniform_real_distribution<double> qdist(0.1, 3.0), xdist(0.2, 3.0);
    bool agree = true;
    for (int trial = 0; trial < 10; ++trial)
      agree = agree && pr::braid_products_agree(gamma, braid_m, qdist(rng), xdist(rng));
    out["braid"] = agree;
    ok = ok && agree;
  }
  if (pcheck > 0) {
    pr::Vec p = pr::p_sequence(gamma, pcheck);
    double deviation = 0.0;
    for (int n = -1; n <= pcheck; ++n) {
      double expected = pr::p_at(p, n);
      double delta = std::abs(pr::p_closed_form(gamma, n) - expected);
      deviation = std::max(deviation, delta / std::max(1.0, std::abs(expected)));
    }
    out["pcheck_max_deviation"] = deviation;
    ok = ok && deviation <= pr::kRelTol;
  }

  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paired root systems for groups generated by involutions"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--eps", flags.eps, "tolerance override for all comparisons");
  app.add_option("--threads", flags.threads, "worker threads for orbit generation");
  app.add_option("--seed", flags.seed, "seed for randomised checks");

  std::string file, side = "1", roots_json, cos_spec;
  int depth = 20, cap = 100000, sub_depth = 12, pcheck = 0;
  bool force = false, canonical = false, oracle = false, report = false;
  bool order = false, braid = false;
  double gamma = 0.0;

  CLI::App* validate = app.add_subcommand("validate", "check conditions D1-D5 of a datum file");
  validate->add_option("file", file)->required();
  validate->fallthrough();

  CLI::App* roots = app.add_subcommand("roots", "enumerate the paired root system");
  roots->fallthrough();
  roots->add_option("file", file)->required();
  roots->add_option("--depth", depth, "orbit depth bound");
  roots->add_option("--cap", cap, "bound on the number of stored roots");
  roots->add_option("--side", side, "1, 2 or both");
  roots->add_flag("--force", force, "allow data failing validation");

  CLI::App* decompose = app.add_subcommand("decompose", "search for a mixed-sign root");
  decompose->fallthrough();
  decompose->add_option("file", file)->required();
  decompose->add_option("--depth", depth, "orbit depth bound");
  decompose->add_option("--cap", cap, "bound on the number of stored roots");

  CLI::App* subgroup = app.add_subcommand("subgroup", "analyse a reflection subgroup");
  subgroup->fallthrough();
  subgroup->add_option("file", file)->required();
  subgroup->add_option("--roots", roots_json, "JSON list of side-1 root coordinates")->required();
  subgroup->add_flag("--canonical", canonical, "include the canonical roots (always emitted)");
  subgroup->add_flag("--oracle", oracle, "cross-check against the brute-force generators");
  subgroup->add_flag("--report", report, "include the pairing report (always emitted)");
  subgroup->add_option("--depth", sub_depth, "parent root enumeration depth");

  CLI::App* dihedral = app.add_subcommand("dihedral", "rank-2 recurrence and order checks");
  dihedral->fallthrough();
  CLI::Option* gamma_opt = dihedral->add_option("--gamma", gamma, "gamma value");
  dihedral->add_option("--cos", cos_spec, "k/m for gamma = cos(k pi / m)");
  dihedral->add_flag("--order", order, "report the order of AB at q = 1");
  dihedral->add_flag("--braid", braid, "check the braid relation at random units");
  dihedral->add_option("--pcheck", pcheck, "compare recurrence and closed form up to N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // anything but --help is an input error
  }

  try {
    if (*validate) return run_validate(file, flags);
    if (*roots) return run_roots(file, depth, cap, side, force, flags);
    if (*decompose) return run_decompose(file, depth, cap, flags);
    if (*subgroup) return run_subgroup(file, roots_json, oracle, sub_depth, flags);
    if (*dihedral)
      return run_dihedral(gamma_opt->count() > 0, gamma, cos_spec, order, braid, pcheck, flags);
  } catch (const pr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
