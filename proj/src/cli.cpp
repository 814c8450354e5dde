#include "powex/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "powex/acceptance.hpp"
#include "powex/convergence_lab.hpp"
#include "powex/errors.hpp"
#include "powex/exact_law.hpp"
#include "powex/expansions.hpp"
#include "powex/montecarlo.hpp"
#include "powex/norming.hpp"
#include "powex/special_functions.hpp"
#include "powex/table_writer.hpp"

namespace powex::cli {

namespace {

double parse_double(std::string_view token) {
  const std::string s(token);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError("not a number: '" + s + "'");
  return v;
}

}  // namespace

std::vector<std::string> split_list(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto end = comma == std::string_view::npos ? spec.size() : comma;
    parts.emplace_back(spec.substr(start, end - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::vector<double> parse_number_list(std::string_view spec) {
  std::vector<double> values;
  for (const auto& part : split_list(spec)) values.push_back(parse_double(part));
  return values;
}

std::vector<double> parse_grid(std::string_view spec) {
  const auto first = spec.find(':');
  if (first == std::string_view::npos) return {parse_double(spec)};
  const auto second = spec.find(':', first + 1);
  if (second == std::string_view::npos || spec.find(':', second + 1) != std::string_view::npos) {
    throw UsageError("grid must be start:stop:step, got '" + std::string(spec) + "'");
  }
  const double start = parse_double(spec.substr(0, first));
  const double stop = parse_double(spec.substr(first + 1, second - first - 1));
  const double step = parse_double(spec.substr(second + 1));
  if (!(step > 0.0) || stop < start) {
    throw UsageError("grid needs step > 0 and stop >= start");
  }
  const double count = std::floor((stop - start) / step + 0.5) + 1.0;
  if (count > 1e7) throw UsageError("grid has too many points");
  std::vector<double> xs;
  for (int i = 0; i < static_cast<int>(count); ++i) xs.push_back(start + i * step);
  return xs;
}

namespace {

struct OutputFlags {
  std::string format = "csv";
  std::string output;
  int precision = 12;
};

void add_output_flags(CLI::App* sub, OutputFlags& flags, int default_precision) {
  flags.precision = default_precision;
  sub->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output,-o", flags.output, "Write to this path instead of stdout");
  sub->add_option("--precision", flags.precision, "Significant digits")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
}

void write(const std::string& text, const OutputFlags& flags, std::ostream& out) {
  if (flags.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(flags.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + flags.output);
  file << text;
}

std::string render(const Table& table, const OutputFlags& flags) {
  return emit_table(table, *parse_format(flags.format), flags.precision);
}

struct Options {
  OutputFlags norming_out, table_out, rates_out, mills_out, simulate_out;

  double n = 0.0;
  double t = 1.0;

  std::string x_grid;
  std::string orders = "limit,second,third,exact";
  std::string target = "cdf";

  double x = 0.0;
  std::string n_grid;
  std::string order = "limit";
  std::string scaling = "raw";

  int max_order = 3;

  std::int64_t reps = 1000;
  std::uint64_t seed = 42;

  bool timings = false;
  std::string summary_path;
};

Target target_or_throw(const std::string& name) {
  const auto t = parse_target(name);
  if (!t) throw UsageError("unknown target '" + name + "' (cdf or pdf)");
  return *t;
}

ApproxOrder order_or_throw(const std::string& name) {
  const auto o = parse_approx_order(name);
  if (!o) throw UsageError("unknown order '" + name + "' (limit, second, third, exact)");
  return *o;
}

std::string run_norming(const Options& o) {
  const NormingConstants nc = norming_constants(o.n, PowerIndex(o.t));
  Table table{{"n", "t", "b", "c", "d"}, {{nc.n, nc.t.value(), nc.b, nc.c, nc.d}}, {}};
  return render(table, o.norming_out);
}

std::string run_table(const Options& o) {
  const NormingConstants nc = norming_constants(o.n, PowerIndex(o.t));
  const Target target = target_or_throw(o.target);
  std::vector<ApproxOrder> orders;
  for (const auto& name : split_list(o.orders)) orders.push_back(order_or_throw(name));
  const std::vector<double> xs = parse_grid(o.x_grid);

  Table table;
  table.columns.push_back("x");
  for (ApproxOrder order : orders) table.columns.emplace_back(to_string(order));

  const bool want_exact = std::find(orders.begin(), orders.end(), ApproxOrder::exact) != orders.end();
  std::vector<ExactEvaluation> exact;
  if (want_exact) exact = exact_grid(nc, xs);

  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (ApproxOrder order : orders) {
      if (order == ApproxOrder::exact) {
        row.push_back(target == Target::cdf ? exact[i].cdf.value : exact[i].pdf);
      } else if (target == Target::cdf) {
        row.push_back(cdf_approx(nc, xs[i], order).raw);
      } else {
        row.push_back(pdf_approx(nc, xs[i], order).raw);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return render(table, o.table_out);
}

std::string run_rates(const Options& o) {
  const std::vector<double> grid = o.n_grid.empty() ? default_n_grid() : parse_number_list(o.n_grid);
  const auto scaling = parse_scaling(o.scaling);
  if (!scaling) throw UsageError("unknown scaling '" + o.scaling + "'");
  const ErrorCurve curve = error_curve(PowerIndex(o.t), o.x, grid, order_or_throw(o.order),
                                       target_or_throw(o.target), *scaling);
  Table table;
  table.columns = {"n", "b", "residual"};
  for (const ErrorRow& row : curve.rows) table.rows.push_back({row.n, row.b, row.residual});
  try {
    const SlopeFit fit = rate_fit(curve);
    table.comments.push_back("slope=" + format_number(fit.slope, 6) +
                             ",stderr=" + format_number(fit.stderr_slope, 6) +
                             ",points=" + std::to_string(fit.points_used) +
                             ",floor_hits=" + std::to_string(fit.noise_floor_hits));
  } catch (const InsufficientData& e) {
    table.comments.push_back(std::string("slope=nan,") + e.what());
  }
  if (curve.sign_change) table.comments.push_back("sign_change=1");
  return render(table, o.rates_out);
}

std::string run_mills(const Options& o) {
  if (o.max_order < 0 || o.max_order > kMaxSeriesOrder) {
    throw UsageError("--max-order must lie in [0, 12]");
  }
  Table table;
  table.columns = {"x", "L", "series", "survival", "abs_error", "next_term_bound"};
  for (double x : parse_grid(o.x_grid)) {
    const double truth = survival(x).value;
    for (int order = 0; order <= o.max_order; ++order) {
      const double series = mills_series_survival(x, order).value;
      const double next = mills_coefficient(order + 1) * std::pow(x, -2.0 * (order + 1)) *
                          std_normal_pdf(x) / x;
      table.rows.push_back({x, static_cast<double>(order), series, truth,
                            std::fabs(series - truth), next});
    }
  }
  return render(table, o.mills_out);
}

std::string run_simulate(const Options& o) {
  const NormingConstants nc = norming_constants(o.n, PowerIndex(o.t));
  const SimSample sample = simulate_block_maxima(nc, o.reps, o.seed);
  Table table;
  table.columns = {"value"};
  table.rows.reserve(sample.values.size());
  for (double v : sample.values) table.rows.push_back({v});
  return render(table, o.simulate_out);
}

int run_verify(const Options& o, std::ostream& out) {
  const std::vector<CheckResult> checks = run_acceptance();
  bool all = true;
  for (const auto& c : checks) {
    out << format_check_line(c, o.timings) << '\n';
    all = all && c.pass;
  }
  const std::string summary = summary_json(checks);
  if (o.summary_path.empty()) {
    out << summary;
  } else {
    std::ofstream file(o.summary_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open summary file " + o.summary_path);
    file << summary;
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Higher-order Gumbel expansions for powered maxima of normal samples", "powex"};
  app.require_subcommand(1);
  Options o;

  auto* norming = app.add_subcommand("norming", "Norming constants b, c, d for (n, t)");
  norming->add_option("--n", o.n, "Sample size (>= 2, real)")->required();
  norming->add_option("--t", o.t, "Power index t > 0")->capture_default_str();
  add_output_flags(norming, o.norming_out, 5);

  auto* table = app.add_subcommand("table", "Approximations and exact law over an x-grid");
  table->add_option("--n", o.n, "Sample size")->required();
  table->add_option("--t", o.t, "Power index t > 0")->capture_default_str();
  table->add_option("--x", o.x_grid, "x-grid start:stop:step")->required();
  table->add_option("--orders", o.orders, "Comma list of limit,second,third,exact")
      ->capture_default_str();
  table->add_option("--target", o.target, "cdf or pdf")->capture_default_str();
  add_output_flags(table, o.table_out, 12);

  auto* rates = app.add_subcommand("rates", "Residual decay across an n-grid with slope fit");
  rates->add_option("--t", o.t, "Power index t > 0")->capture_default_str();
  rates->add_option("--x", o.x, "Evaluation point")->required();
  rates->add_option("--n-grid", o.n_grid, "Comma list of n (default 1e3,...,1e12)");
  rates->add_option("--order", o.order, "limit, second, third or exact")->capture_default_str();
  rates->add_option("--target", o.target, "cdf or pdf")->capture_default_str();
  rates->add_option("--scaling", o.scaling, "raw, hall_scaled or third_order_remainder")
      ->capture_default_str();
  add_output_flags(rates, o.rates_out, 12);

  auto* mills = app.add_subcommand("mills", "Truncated Mills-ratio series against the tail");
  mills->add_option("--x", o.x_grid, "x-grid start:stop:step or a single x >= 2")->required();
  mills->add_option("--max-order", o.max_order, "Largest L")->capture_default_str();
  add_output_flags(mills, o.mills_out, 12);

  auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo normalized block maxima");
  simulate->add_option("--n", o.n, "Integer block size")->required();
  simulate->add_option("--t", o.t, "Power index t > 0")->capture_default_str();
  simulate->add_option("--reps", o.reps, "Replicates")->capture_default_str();
  simulate->add_option("--seed", o.seed, "Seed")->capture_default_str();
  add_output_flags(simulate, o.simulate_out, 12);

  auto* verify = app.add_subcommand("verify", "Run every acceptance check");
  verify->add_flag("--timings", o.timings, "Append wall-clock time to each line");
  verify->add_option("--summary", o.summary_path, "Write the JSON summary here");

  // CLI11 takes the arguments in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (norming->parsed()) {
      write(run_norming(o), o.norming_out, out);
    } else if (table->parsed()) {
      write(run_table(o), o.table_out, out);
    } else if (rates->parsed()) {
      write(run_rates(o), o.rates_out, out);
    } else if (mills->parsed()) {
      write(run_mills(o), o.mills_out, out);
    } else if (simulate->parsed()) {
      write(run_simulate(o), o.simulate_out, out);
    } else if (verify->parsed()) {
      return run_verify(o, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace powex::cli
