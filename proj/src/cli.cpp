#include "locdens/cli.hpp"

#include "locdens/closed_counts.hpp"
#include "locdens/densities.hpp"
#include "locdens/genseries.hpp"
#include "locdens/serialize.hpp"
#include "locdens/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <optional>

namespace locdens {

namespace {

struct Request {
  std::string lattice;
  std::uint64_t p = 2;
  unsigned m = 0;
  std::string t;
  std::string normalization = "Q";
  std::string format = "text";
  std::optional<std::uint64_t> budget;

  std::string suite = "all";
  std::optional<unsigned> d, n, nmax;
  std::optional<std::string> a;

  std::string family = "H0";
  unsigned vmax = 6;
  unsigned kmax = 2;
  unsigned e = 0;
  unsigned scale_a = 0;
  std::string u = "1";
};

BigInt parse_int(const std::string& text, const char* what) {
  BigInt x;
  std::string s = text;
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty() || x.set_str(s, 10) != 0) {
    throw CLI::ValidationError(std::string(what), "not an integer: " + text);
  }
  return x;
}

EnumBudget budget_of(const Request& r) {
  EnumBudget b;
  if (r.budget) {
    b.max_states = *r.budget;
  } else if (const char* env = std::getenv("LOCDENS_BUDGET")) {
    try {
      b.max_states = std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("LOCDENS_BUDGET", "not a positive integer");
    }
  }
  if (b.max_states < 1) throw CLI::ValidationError("--budget", "must be at least 1");
  return b;
}

std::string density_text(const DensityResult& d) {
  if (const auto* v = std::get_if<DensityValue>(&d.outcome)) {
    std::ostringstream os;
    os << to_string(v->alpha) << "  [" << to_string(v->provenance) << ", stable from m = "
       << v->stabilized_at << "]";
    return os.str();
  }
  if (const auto* div = std::get_if<Diverges>(&d.outcome)) return "diverges: " + div->description;
  std::string s = "oscillates:";
  for (const Rational& q : std::get<Oscillates>(d.outcome).values) s += " " + to_string(q);
  return s;
}

DensityResult density_for(const LatticeSpec& l, const BigInt& t, const std::string& norm,
                          const EnumBudget& budget) {
  DensityOptions opts;
  opts.budget = budget;
  if (norm == "q") return density_q(l, Target(l.prime(), t), opts);
  return density(l, Target(l.prime(), t), opts);
}

int run_count(const Request& r, std::ostream& out) {
  const LatticeSpec l = parse_lattice(r.lattice, r.p);
  const BigInt t = parse_int(r.t, "--t");
  const Counted c = count_lattice(l, r.m, Target(r.p, t), budget_of(r));
  if (r.format == "json") {
    out << json{{"lattice", to_string(l)},
                {"p", r.p},
                {"m", r.m},
                {"t", t.get_str()},
                {"count", c.value.get_str()},
                {"route", std::string(to_string(c.route))}}
               .dump(2)
        << "\n";
  } else {
    out << c.value.get_str() << "  [" << to_string(c.route) << "]\n";
  }
  return exit_ok;
}

int run_density(const Request& r, std::ostream& out) {
  const LatticeSpec l = parse_lattice(r.lattice, r.p);
  const DensityResult d = density_for(l, parse_int(r.t, "--t"), r.normalization, budget_of(r));
  if (r.format == "json") {
    json j = d;
    j["lattice"] = to_string(l);
    j["p"] = r.p;
    j["t"] = r.t;
    out << j.dump(2) << "\n";
  } else {
    out << density_text(d) << "\n";
  }
  return exit_ok;
}

int run_series(const Request& r, std::ostream& out, std::ostream& err) {
  const LatticeSpec l = parse_lattice(r.lattice, r.p);
  const BigInt t = parse_int(r.t, "--t");
  RationalSeries s;
  const BlockSpec* block = l.is_single_block() ? &l.blocks().front() : nullptr;
  if (const auto* h0 = block ? std::get_if<ScaledH0>(block) : nullptr) {
    s = series_h0(r.p, h0->e, t);
  } else if (const auto* h1 = block ? std::get_if<ScaledH1>(block) : nullptr) {
    s = series_h1(h1->e, t);
  } else {
    err << "error: series are available for a single H0 or H1 block only\n";
    return exit_usage;
  }
  if (r.format == "json") {
    out << json(s).dump(2) << "\n";
  } else {
    out << to_string(s) << "\n";
  }
  return exit_ok;
}

int run_verify_cmd(const Request& r, std::ostream& out) {
  VerifyOptions o;
  o.budget = budget_of(r);
  o.d = r.d;
  o.n = r.n;
  o.nmax = r.nmax;
  if (r.a) o.a = parse_int(*r.a, "--a");
  const VerifyReport report = run_verify(r.suite, o);
  if (r.format == "text") {
    for (const CheckRecord& c : report.records) {
      out << std::left << std::setw(8) << to_string(c.status) << c.suite << "  " << c.instance
          << "\n";
    }
    out << "pass " << report.count(CheckStatus::pass) << ", fail "
        << report.count(CheckStatus::fail) << ", skipped " << report.count(CheckStatus::skipped)
        << ", control " << report.count(CheckStatus::control) << "\n";
  } else {
    out << report_json(report).dump(2) << "\n";
  }
  return report.ok() ? exit_ok : exit_verify_failed;
}

int run_table(const Request& r, std::ostream& out) {
  const EnumBudget budget = budget_of(r);
  const std::uint64_t p = r.p;
  BlockSpec block;
  if (r.family == "H0") {
    block = ScaledH0{r.e};
  } else if (r.family == "H1") {
    block = ScaledH1{r.e};
  } else if (r.family == "TypeI") {
    block = TypeI{r.scale_a, parse_int(r.u, "--u")};
  } else if (r.family == "L3") {
    block = L3Block{};
  } else {
    throw CLI::ValidationError("--family", "expected H0, H1, TypeI or L3");
  }
  const LatticeSpec l(p, {block});
  const bool q = r.normalization == "q";

  // (label, target) pairs
  std::vector<std::pair<json, BigInt>> cells;
  if (r.family == "L3") {
    for (unsigned k = 0; k <= r.kmax; ++k) {
      for (long a0 : {1, 2, 3, 5, 6, 7}) {
        const BigInt half = ipow(4, k) * a0;
        cells.push_back({{{"k", k}, {"a0", a0}}, q ? half : BigInt(2 * half)});
      }
    }
  } else {
    std::vector<long> units;
    for (long c = 1; c < (p == 2 ? 8 : static_cast<long>(p)); c += (p == 2 ? 2 : 1)) units.push_back(c);
    for (unsigned v = 0; v <= r.vmax; ++v) {
      for (long c : units) cells.push_back({{{"v", v}, {"unit", c}}, ipow(p, v) * c});
    }
  }

  json rows = json::array();
  for (const auto& [label, t] : cells) {
    json row = label;
    row["t"] = t.get_str();
    row["density"] = json(density_for(l, t, r.normalization, budget));
    rows.push_back(row);
  }
  if (r.format == "json") {
    out << json{{"lattice", to_string(l)}, {"p", p}, {"normalization", r.normalization}, {"rows", rows}}
               .dump(2)
        << "\n";
    return exit_ok;
  }
  out << "# " << to_string(l) << " at p = " << p << ", " << r.normalization << "-normalised\n";
  for (const json& row : rows) {
    for (const auto& [k, v] : row.items()) {
      if (k == "density" || k == "t") continue;
      out << k << "=" << v.dump() << "  ";
    }
    DensityResult d = row.at("density").get<DensityResult>();
    out << "t=" << row.at("t").get<std::string>() << "  alpha=" << density_text(d) << "\n";
  }
  return exit_ok;
}

void add_common(CLI::App* cmd, Request& r) {
  cmd->add_option("--p", r.p, "prime")->check(CLI::PositiveNumber);
  cmd->add_option("--format", r.format, "output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--budget", r.budget, "enumeration budget (states)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representation counts and local densities of dyadic and p-adic block lattices",
               "locdens"};
  app.require_subcommand(1);
  Request r;

  auto* count = app.add_subcommand("count", "r_m(t; L)");
  count->add_option("--lattice", r.lattice, "lattice, e.g. \"H0 + <1>\"")->required();
  count->add_option("--m", r.m, "level")->required()->check(CLI::PositiveNumber);
  count->add_option("--t", r.t, "target")->required();
  add_common(count, r);

  auto* dens = app.add_subcommand("density", "local density alpha_p(t; L)");
  dens->add_option("--lattice", r.lattice)->required();
  dens->add_option("--t", r.t, "target")->required();
  dens->add_option("--normalization", r.normalization)->check(CLI::IsMember({"Q", "q"}));
  add_common(dens, r);

  auto* series = app.add_subcommand("series", "generating series sum_m r_m(t) X^m");
  series->add_option("--lattice", r.lattice)->required();
  series->add_option("--t", r.t, "target")->required();
  add_common(series, r);

  auto* verify = app.add_subcommand("verify", "run self-check suites against the oracle");
  verify->add_option("--suite", r.suite)->check(CLI::IsMember(suite_names()));
  verify->add_option("--d", r.d, "dimension (halflift)");
  verify->add_option("--n", r.n, "level (halflift)");
  verify->add_option("--nmax", r.nmax, "largest level swept");
  verify->add_option("--a", r.a, "target (halflift)");
  add_common(verify, r);
  r.format = "text";

  auto* table = app.add_subcommand("table", "density table for one block family");
  table->add_option("--family", r.family)->check(CLI::IsMember({"H0", "H1", "TypeI", "L3"}));
  table->add_option("--vmax", r.vmax);
  table->add_option("--kmax", r.kmax);
  table->add_option("--e", r.e, "scale exponent of H0/H1");
  table->add_option("--a", r.scale_a, "scale exponent of the Type I block");
  table->add_option("--u", r.u, "unit of the Type I block");
  table->add_option("--normalization", r.normalization)->check(CLI::IsMember({"Q", "q"}));
  add_common(table, r);

  // verify speaks JSON unless asked otherwise
  bool verify_format_given = false;
  verify->callback([&] { verify_format_given = verify->count("--format") > 0; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*count) return run_count(r, out);
    if (*dens) return run_density(r, out);
    if (*series) return run_series(r, out, err);
    if (*verify) {
      if (!verify_format_given) r.format = "json";
      return run_verify_cmd(r, out);
    }
    return run_table(r, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_budget;
  } catch (const SingularTargetError& e) {
    err << "error: " << e.what() << "\n";
    return exit_singular;
  } catch (const StabilizationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_verify_failed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_budget;
  }
}

}  // namespace locdens
