// gekr: bounds, optimization, verification and construction of GEKR partial 3-covering arrays.
//
// Exit codes: 0 success / property holds, 1 property fails or construction failed, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gekr/gekr.hpp"

namespace {

using namespace gekr;

constexpr int kUsage = 2;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Fraction resolve_alpha(const std::string& alpha, std::int64_t k, std::int64_t n) {
  if (k >= 0 && !alpha.empty()) throw Error("give either --alpha or --k, not both");
  if (k >= 0) return Fraction(k, n);
  if (alpha.empty()) throw Error("one of --alpha or --k is required");
  return Fraction::parse(alpha);
}

struct BoundArgs {
  std::string model = "independent";
  std::string alpha;
  std::int64_t k = -1;
  std::int64_t n = 0;
  bool json = false;
};

int run_bound(const BoundArgs& args) {
  const BoundModel model = parse_bound_model(args.model);
  const Fraction alpha = resolve_alpha(args.alpha, args.k, args.n);
  const LogMagnitude m = evaluate_bound(model, alpha, args.n);
  if (args.json) {
    nlohmann::json j;
    j["model"] = bound_model_name(model);
    j["alpha"] = alpha.value();
    j["n"] = args.n;
    if (m.is_zero()) {
      j["log10"] = nullptr;
      j["mantissa"] = 0;
      j["exponent"] = 0;
    } else {
      const auto s = m.scientific();
      j["log10"] = std::stod(format_log10(m));
      j["mantissa"] = s.mantissa;
      j["exponent"] = s.exponent;
    }
    std::cout << j.dump() << '\n';
  } else {
    std::cout << m.render() << "\tlog10=" << format_log10(m) << '\n';
  }
  return 0;
}

struct TableArgs {
  std::string model = "independent";
  std::string alphas;
  std::string ns;
  bool alphas_given = false;
  bool ns_given = false;
};

int run_table(const TableArgs& args) {
  const BoundModel model = parse_bound_model(args.model);
  std::vector<AlphaLabel> alphas = default_alphas(model);
  std::vector<std::int64_t> ns = default_ns();
  if (args.alphas_given) {
    alphas.clear();
    for (const auto& a : split_list(args.alphas)) alphas.push_back(alpha_label(a));
  }
  if (args.ns_given) {
    ns.clear();
    for (const auto& n : split_list(args.ns)) ns.push_back(std::stoll(n));
  }
  write_table_csv(std::cout, bound_table(model, alphas, ns));
  return 0;
}

struct VerifyArgs {
  std::string path = "-";
  std::string patterns;
  bool list = false;
  unsigned workers = 1;
};

int run_verify(const VerifyArgs& args) {
  const PatternSet patterns = args.patterns.empty() ? PatternSet::gekr() : PatternSet::parse(args.patterns);
  ArrayMatrix array;
  if (args.path == "-") {
    array = parse_array(std::cin);
  } else {
    std::ifstream in(args.path);
    if (!in) throw Error("cannot open " + args.path);
    array = parse_array(in);
  }
  const DeficiencyReport report =
      find_deficient(array, patterns, {.stop_early = !args.list, .workers = args.workers});
  std::cout << "rows " << array.rows() << ", columns " << array.cols() << ", patterns " << patterns.str() << '\n';
  if (report.ok()) {
    std::cout << "covered: all " << report.total_checked << " triples\n";
    return 0;
  }
  for (const auto& d : report.deficient_triples)
    std::cout << "deficient " << d.rows.i << ' ' << d.rows.j << ' ' << d.rows.l << " missing " << d.missing.str()
              << '\n';
  if (args.list)
    std::cout << "deficient: " << report.deficient_count << " of " << report.total_checked << " triples\n";
  else
    std::cout << "first deficient triple found after " << report.total_checked << " triples\n";
  return 1;
}

struct ConstructArgs {
  std::string model = "fixed";
  std::string alpha;
  std::int64_t k = -1;
  std::int64_t n = 0;
  std::string m = "lll";
  std::uint64_t seed = 0;
  std::uint64_t max_resamples = 1'000'000;
  std::string strategy = "moser-tardos";
  std::size_t attempts = 10'000;
  std::string output;
  unsigned workers = 1;
  bool progress = false;
};

int run_construct(const ConstructArgs& args) {
  const Fraction alpha = resolve_alpha(args.alpha, args.k, args.n);
  ConstructionConfig config;
  if (args.model == "fixed")
    config.params = ModelParams::fixed_weight(args.n, alpha);
  else if (args.model == "independent")
    config.params = ModelParams::independent(args.n, alpha);
  else
    throw Error("unknown model '" + args.model + "'");

  if (args.strategy == "moser-tardos")
    config.strategy = Strategy::MoserTardos;
  else if (args.strategy == "rejection")
    config.strategy = Strategy::Rejection;
  else if (args.strategy == "greedy")
    config.strategy = Strategy::Greedy;
  else
    throw Error("unknown strategy '" + args.strategy + "'");

  if (args.m == "lll") {
    if (config.strategy == Strategy::Greedy) {
      config.m = 0;
    } else {
      const LogMagnitude bound = config.params.model == Model::FixedWeight
                                     ? nu_exact_sum(config.params.n, config.params.r)
                                     : zeta(alpha.value(), config.params.n);
      if (!bound.is_zero() && bound.log10() > 6) throw Error("local-lemma bound too large to construct");
      config.m = bound.is_zero() ? 0 : static_cast<std::size_t>(std::floor(bound.value()));
    }
  } else {
    config.m = std::stoull(args.m);
  }
  config.seed = args.seed;
  config.max_resamples = args.max_resamples;
  config.attempts_per_row = args.attempts;
  config.workers = args.workers;
  if (args.progress) config.progress = &std::cerr;

  const ConstructionResult result = construct(config);
  std::cerr << (result.success ? "success" : "failure") << ": rows " << result.array.rows() << ", resamples "
            << result.resamples << '\n';
  if (!result.success) return 1;
  if (args.output.empty() || args.output == "-") {
    write_array(std::cout, result.array);
  } else {
    std::ofstream out(args.output);
    if (!out) throw Error("cannot write " + args.output);
    write_array(out, result.array);
  }
  return 0;
}

struct OptimizeArgs {
  std::string model = "fixed";
  std::int64_t n = 10'000;
};

int run_optimize(const OptimizeArgs& args) {
  char buf[128];
  if (args.model == "independent") {
    const auto opt = argmin_independent(args.n);
    std::snprintf(buf, sizeof buf, "alpha* = %.6f\np_n(alpha*) = %s\tlog10=%s\nzeta = %s", opt.alpha,
                  opt.p.render().c_str(), format_log10(opt.p).c_str(), zeta(opt.alpha, args.n).render().c_str());
  } else if (args.model == "fixed") {
    const auto opt = argmin_mu();
    std::snprintf(buf, sizeof buf, "alpha* = %.6f\nmu(alpha*) = %.9f", opt.alpha, opt.mu);
  } else {
    throw Error("unknown model '" + args.model + "'");
  }
  std::cout << buf << '\n';
  return 0;
}

struct MaxFamilyArgs {
  int n = 0;
  int k = 0;
  std::uint64_t node_limit = 10'000'000;
};

int run_maxfamily(const MaxFamilyArgs& args) {
  const MaxFamilyResult result = max_family(args.n, args.k, args.node_limit);
  std::cout << "# size " << result.size << (result.exact ? " (exact)" : " (inconclusive: node limit reached)")
            << ", nodes " << result.nodes << '\n';
  write_array(std::cout, family_to_array(result.witness, args.n));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds, optimization, verification and construction of GEKR partial 3-covering arrays"};
  app.require_subcommand(1);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Row-count lower bound for one (alpha, n)");
  bound_cmd->add_option("--model", bound.model, "independent | fixed-asymptotic | fixed-exact");
  bound_cmd->add_option("--alpha", bound.alpha, "Row density, decimal or fraction such as 2/3");
  bound_cmd->add_option("--k", bound.k, "Row weight (alpha = k/n)");
  bound_cmd->add_option("--n", bound.n, "Number of columns")->required();
  bound_cmd->add_flag("--json", bound.json, "Print a JSON object");

  TableArgs table;
  auto* table_cmd = app.add_subcommand("table", "CSV of bounds over an alpha x n grid");
  table_cmd->add_option("--model", table.model, "independent | fixed-asymptotic | fixed-exact");
  auto* alphas_opt = table_cmd->add_option("--alphas", table.alphas, "Comma separated alphas");
  auto* ns_opt = table_cmd->add_option("--ns", table.ns, "Comma separated column counts");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check that every row triple covers the patterns");
  verify_cmd->add_option("path", verify.path, "Array file, or - for standard input");
  verify_cmd->add_option("--patterns", verify.patterns, "Comma separated triples (default 011,101,110,111)");
  verify_cmd->add_flag("--list-deficient", verify.list, "List every deficient triple");
  verify_cmd->add_option("--workers", verify.workers, "Worker threads")->check(CLI::PositiveNumber);

  ConstructArgs cons;
  auto* construct_cmd = app.add_subcommand("construct", "Randomized construction of a GEKR array");
  construct_cmd->add_option("--model", cons.model, "fixed | independent");
  construct_cmd->add_option("--alpha", cons.alpha, "Row density");
  construct_cmd->add_option("--k", cons.k, "Row weight");
  construct_cmd->add_option("--n", cons.n, "Number of columns")->required();
  construct_cmd->add_option("--m", cons.m, "Row count, or 'lll' for the local-lemma bound");
  construct_cmd->add_option("--seed", cons.seed, "Random seed");
  construct_cmd->add_option("--max-resamples", cons.max_resamples, "Resampling budget")->check(CLI::PositiveNumber);
  construct_cmd->add_option("--strategy", cons.strategy, "moser-tardos | rejection | greedy");
  construct_cmd->add_option("--attempts", cons.attempts, "Greedy: consecutive rejections before stopping")
      ->check(CLI::PositiveNumber);
  construct_cmd->add_option("-o,--output", cons.output, "Output file (default standard output)");
  construct_cmd->add_option("--workers", cons.workers, "Worker threads for verification scans")
      ->check(CLI::PositiveNumber);
  construct_cmd->add_flag("--progress", cons.progress, "Report resample counts on standard error");

  OptimizeArgs optimize;
  auto* optimize_cmd = app.add_subcommand("optimize", "Row density minimizing the deficiency probability");
  optimize_cmd->add_option("--model", optimize.model, "independent | fixed");
  optimize_cmd->add_option("--n", optimize.n, "Number of columns (independent model)");

  int figure = 0;
  double step = 0.001;
  auto* figure_cmd = app.add_subcommand("figure", "CSV curve data for figure 1-4");
  figure_cmd->add_option("--figure,figure", figure, "Figure number")->required();
  figure_cmd->add_option("--step", step, "Alpha grid step, in (0, 0.1]");

  MaxFamilyArgs family;
  auto* family_cmd = app.add_subcommand("maxfamily", "Exact maximum GEKR family of k-subsets");
  family_cmd->add_option("--n", family.n, "Ground set size")->required();
  family_cmd->add_option("--k", family.k, "Subset size")->required();
  family_cmd->add_option("--node-limit", family.node_limit, "Branch-and-bound node budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*bound_cmd) return run_bound(bound);
    if (*table_cmd) {
      table.alphas_given = alphas_opt->count() > 0;
      table.ns_given = ns_opt->count() > 0;
      return run_table(table);
    }
    if (*verify_cmd) return run_verify(verify);
    if (*construct_cmd) return run_construct(cons);
    if (*optimize_cmd) return run_optimize(optimize);
    if (*figure_cmd) {
      write_figure_csv(std::cout, figure_data(figure, step));
      return 0;
    }
    if (*family_cmd) return run_maxfamily(family);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
