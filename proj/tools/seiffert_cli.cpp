#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seiffert/algebra.hpp"
#include "seiffert/analysis.hpp"
#include "seiffert/bounds.hpp"
#include "seiffert/catalog.hpp"
#include "seiffert/core.hpp"
#include "seiffert/expr.hpp"
#include "seiffert/invariant.hpp"
#include "seiffert/metric.hpp"
#include "seiffert/transform.hpp"

namespace {

using namespace seiffert;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// Optional CSV sink: header row then data rows.
class Csv {
 public:
  void open(const std::string& path, const std::vector<std::string>& header) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw PreconditionError("cannot open CSV file '" + path + "'");
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    if (!file_.is_open()) return;
    for (std::size_t i = 0; i < cells.size(); ++i) file_ << (i ? "," : "") << csv_field(cells[i]);
    file_ << "\n";
  }

 private:
  std::ofstream file_;
};

struct Globals {
  std::size_t grid = kDefaultGrid;
  double tol = kCompareTol;
  double eps = kOpenEps;
  std::string csv;
  bool tol_set = false;

  SearchOptions search(bool trace = false) const {
    SearchOptions o;
    o.grid = grid;
    o.eps = eps;
    o.keep_trace = trace;
    return o;
  }
};

int print_report(const VerificationReport& rep, Csv& csv) {
  std::cout << rep.subject << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : rep.checks) {
    std::cout << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name
              << "  margin=" << num(c.worst_margin) << "  witness=" << c.witness.describe();
    if (!c.note.empty()) std::cout << "  note: " << c.note;
    std::cout << "\n";
    csv.row({c.name, c.passed ? "PASS" : "FAIL", num(c.worst_margin), c.witness.describe()});
  }
  return rep.passed() ? 0 : 1;
}

void print_trace(const std::vector<std::pair<double, double>>& trace, Csv& csv) {
  for (const auto& [z, v] : trace) csv.row({num(z), num(v)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerics for bivariate means through their Seiffert functions"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--grid", g.grid, "Grid size for sweeps and searches")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "Tolerance for comparisons and the invariant solver")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { g.tol_set = true; });
  app.add_option("--eps", g.eps, "Distance of the outermost grid points from 0 and 1")
      ->check(CLI::Range(1e-15, 0.1));
  app.add_option("--csv", g.csv, "Write rows to this CSV file");
  app.fallthrough();

  int status = 0;
  Csv csv;

  // eval EXPR x y
  std::string e1, e2, e3;
  double x = 0.0, y = 0.0;
  auto* eval = app.add_subcommand("eval", "Evaluate a mean expression at (x, y)");
  eval->add_option("expr", e1, "Mean expression")->required();
  eval->add_option("x", x)->required()->check(CLI::PositiveNumber);
  eval->add_option("y", y)->required()->check(CLI::PositiveNumber);
  eval->callback([&] {
    const Mean m = parse_mean(e1);
    std::cout << m.name() << "(" << num(x) << ", " << num(y) << ") = " << num(m(x, y)) << "\n";
    csv.open(g.csv, {"x", "y", "value"});
    csv.row({num(x), num(y), num(m(x, y))});
  });

  // seiffert EXPR [z...]
  std::vector<double> zs;
  auto* seif = app.add_subcommand("seiffert", "Seiffert function of an expression, band check");
  seif->add_option("expr", e1)->required();
  seif->add_option("z", zs, "Points in (0, 1] to tabulate");
  seif->callback([&] {
    const SeiffertFunction f = parse_function(e1);
    csv.open(g.csv, {"z", "value", "deviation", "gap"});
    if (!zs.empty()) {
      std::cout << "z  f(z)  f(z)-z  1/f-1/z\n";
      for (double z : zs) {
        if (!(z > 0.0 && z <= 1.0)) throw PreconditionError("z must lie in (0, 1]");
        std::cout << num(z) << "  " << num(f(z)) << "  " << num(f.deviation(z)) << "  "
                  << num(f.gap(z)) << "\n";
        csv.row({num(z), num(f(z)), num(f.deviation(z)), num(f.gap(z))});
      }
    }
    Csv none;
    status = print_report(check_seiffert(f, g.grid, g.eps), none);
  });

  // compare E1 E2
  auto* cmp = app.add_subcommand("compare", "Order of two means on the grid");
  cmp->add_option("lhs", e1)->required();
  cmp->add_option("rhs", e2)->required();
  cmp->callback([&] {
    const SeiffertFunction f = parse_function(e1), h = parse_function(e2);
    const ComparisonVerdict v = compare(f, h, g.grid, g.tol);
    std::cout << print(parse(e1)) << " " << to_string(v.relation) << " " << print(parse(e2))
              << "\n  worst margin " << num(v.worst_margin) << " at z = " << v.witness.describe();
    if (v.relation == Relation::incomparable)
      std::cout << "; opposite sign at z = " << v.second_witness.describe();
    std::cout << "\n";
    csv.open(g.csv, {"relation", "margin", "witness", "second_witness"});
    csv.row({to_string(v.relation), num(v.worst_margin), v.witness.describe(),
             v.second_witness.describe()});
  });

  // schur EXPR
  auto* schur = app.add_subcommand("schur", "Schur convexity class of a mean");
  schur->add_option("expr", e1)->required();
  schur->callback([&] {
    const SchurVerdict v = schur_classify(parse_function(e1), g.grid);
    std::cout << print(parse(e1)) << ": " << to_string(v.classification)
              << (v.strict ? " (strict)" : "") << "\n  worst defect "
              << num(v.worst_monotonicity_defect) << " at z = " << v.witness.describe() << "\n";
    csv.open(g.csv, {"classification", "strict", "defect", "witness"});
    csv.row({to_string(v.classification), v.strict ? "1" : "0", num(v.worst_monotonicity_defect),
             v.witness.describe()});
  });

  // distance E1 E2
  auto* dist = app.add_subcommand("distance", "Seiffert distance of two means");
  dist->add_option("lhs", e1)->required();
  dist->add_option("rhs", e2)->required();
  dist->callback([&] {
    const MeanExpr a = parse(e1), b = parse(e2);
    MetricResult r;
    if (a.kind == MeanExpr::Kind::lift || b.kind == MeanExpr::Kind::lift)
      r = seiffert_distance(elaborate_function(a), elaborate_function(b), g.search());
    else
      r = mean_distance(elaborate(a), elaborate(b), g.search());
    std::cout << "d(" << print(a) << ", " << print(b) << ") = " << num(r.distance) << " at z = "
              << r.extremizer.describe();
    if (r.cross_check) std::cout << "\n  mean-side estimate " << num(*r.cross_check);
    std::cout << "\n  " << (r.converged ? "converged" : "NOT converged") << "\n";
    csv.open(g.csv, {"distance", "extremizer", "cross_check", "converged"});
    csv.row({num(r.distance), r.extremizer.describe(), r.cross_check ? num(*r.cross_check) : "",
             r.converged ? "1" : "0"});
    if (!r.converged) status = 1;
  });

  // bounds convex K M N | bounds shift M N
  auto* bounds = app.add_subcommand("bounds", "Optimal constants of two-sided bounds");
  bounds->require_subcommand(1);
  bool verify = false;
  auto* convex = bounds->add_subcommand("convex", "(1-mu) K + mu N <= M <= (1-nu) K + nu N");
  convex->add_option("K", e1)->required();
  convex->add_option("M", e2)->required();
  convex->add_option("N", e3)->required();
  convex->add_flag("--verify", verify, "Check soundness on sample pairs");
  convex->callback([&] {
    const MeanExpr k = parse(e1), m = parse(e2), n = parse(e3);
    const BoundResult b = convex_combination_bounds(elaborate_function(k), elaborate_function(m),
                                                    elaborate_function(n), g.search(true));
    std::cout << "mu = " << num(b.lower_constant) << " at z = " << b.lower_extremizer.describe()
              << "\nnu = " << num(b.upper_constant) << " at z = " << b.upper_extremizer.describe()
              << "\n(1 - mu) " << print(k) << " + mu " << print(n) << " <= " << print(m)
              << " <= (1 - nu) " << print(k) << " + nu " << print(n) << "\n";
    csv.open(g.csv, {"z", "R"});
    print_trace(b.objective_trace, csv);
    if (verify) {
      Csv none;
      status = print_report(
          verify_convex_bounds(elaborate(k), elaborate(m), elaborate(n), b), none);
    }
  });
  auto run_shift = [&] {
    const MeanExpr m = parse(e1), n = parse(e2);
    const Mean mm = elaborate(m), nn = elaborate(n);
    const BoundResult b = shift_bounds(mm, nn, g.search(true));
    std::cout << "p0 = " << num(b.lower_constant) << " at z = " << b.lower_extremizer.describe()
              << "\nq0 = " << num(b.upper_constant) << " at z = " << b.upper_extremizer.describe()
              << "\n" << b.note << "\n";
    csv.open(g.csv, {"z", "objective"});
    print_trace(b.objective_trace, csv);
    if (verify) {
      Csv none;
      status = print_report(verify_shift_bounds(mm, nn, b), none);
    }
  };
  auto* shift = bounds->add_subcommand("shift", "Optimal shifts of N bounding M");
  shift->add_option("M", e1)->required();
  shift->add_option("N", e2)->required();
  shift->add_flag("--verify", verify, "Check soundness on sample pairs");
  shift->callback(run_shift);
  auto* shift_top = app.add_subcommand("shift-bounds", "Same as 'bounds shift'");
  shift_top->add_option("M", e1)->required();
  shift_top->add_option("N", e2)->required();
  shift_top->add_flag("--verify", verify, "Check soundness on sample pairs");
  shift_top->callback(run_shift);

  // invariant M N [x y] [--as-mean] [--functional]
  std::vector<double> xy;
  bool as_mean = false, functional = false;
  auto* inv = app.add_subcommand("invariant", "Invariant mean K with K(M, N) = K");
  inv->add_option("M", e1)->required();
  inv->add_option("N", e2)->required();
  inv->add_option("xy", xy, "Pair (x, y)")->expected(0, 2);
  inv->add_flag("--as-mean", as_mean, "Validate K as a mean and register it for this session");
  inv->add_flag("--functional", functional, "Use the functional iteration");
  inv->callback([&] {
    InvariantSolveConfig cfg;
    if (g.tol_set) cfg.tolerance = g.tol;
    if (functional) cfg.mode = InvariantMode::functional;
    const Mean m = parse_mean(e1), n = parse_mean(e2);
    const Mean k = invariant_mean(m, n, cfg);
    csv.open(g.csv, {"x", "y", "value"});
    if (xy.size() == 2) {
      if (!(xy[0] > 0.0 && xy[1] > 0.0)) throw PreconditionError("x and y must be positive");
      const double v = k(xy[0], xy[1]);
      std::cout << k.name() << "(" << num(xy[0]) << ", " << num(xy[1]) << ") = " << num(v)
                << "\n  invariance residual "
                << num(std::abs(k(m(xy[0], xy[1]), n(xy[0], xy[1])) - v) / v) << "\n";
      csv.row({num(xy[0]), num(xy[1]), num(v)});
    } else if (!xy.empty()) {
      throw PreconditionError("invariant: give both x and y");
    }
    if (as_mean) {
      MeanCatalog session = MeanCatalog::standard();
      Csv none;
      status = print_report(validate_mean(k), none);
      if (status == 0) {
        session.add(k);
        std::cout << "registered " << k.name() << " (" << session.names().size()
                  << " means in session)\n";
      }
    }
  });

  // corpus NAME
  std::string corpus;
  std::size_t points = kCorpusPoints;
  auto* corp = app.add_subcommand("corpus", "Run an inequality corpus");
  corp->add_option("name", corpus)->required()->check(CLI::IsMember(corpus_names()));
  corp->add_option("--points", points, "Grid points")->check(CLI::PositiveNumber);
  corp->callback([&] {
    csv.open(g.csv, {"name", "status", "margin", "witness"});
    status = print_report(verify_corpus(corpus, points), csv);
  });

  // family BASE [z...]
  std::size_t depth = 3;
  auto* fam = app.add_subcommand("family", "Members I^n(base) of an iterated family");
  fam->add_option("base", e1, "sin, arcsin, tan, ... or a label such as Si")->required();
  fam->add_option("z", zs, "Points in (0, 1]");
  fam->add_option("--depth", depth, "Largest depth")->check(CLI::Range(0, 32));
  fam->callback([&] {
    const IteratedFamily& f = iterated_family(e1);
    if (zs.empty()) zs = {0.25, 0.5, 0.75, 1.0};
    std::vector<std::string> header{"z"};
    std::cout << "z";
    for (std::size_t n = 0; n <= depth; ++n) {
      const std::string label = n == 0 ? f.base().name() : f.label() + "_" + std::to_string(n);
      header.push_back(label);
      std::cout << "  " << label;
    }
    std::cout << "\n";
    csv.open(g.csv, header);
    for (double z : zs) {
      if (!(z > 0.0 && z <= 1.0)) throw PreconditionError("z must lie in (0, 1]");
      std::vector<std::string> row{num(z)};
      for (std::size_t n = 0; n <= depth; ++n) row.push_back(num(f.member(n)(z)));
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "  " : "") << row[i];
      std::cout << "\n";
      csv.row(row);
    }
    for (std::size_t n = 0; n <= depth; ++n) {
      const SchurVerdict v = schur_classify(f.member(n), g.grid);
      std::cout << "depth " << n << ": " << to_string(v.classification) << "\n";
    }
  });

  // validate EXPR
  std::size_t samples = kDefaultSamples;
  auto* val = app.add_subcommand("validate", "Check the mean axioms on sample pairs");
  val->add_option("expr", e1)->required();
  val->add_option("--samples", samples)->check(CLI::PositiveNumber);
  val->callback([&] {
    csv.open(g.csv, {"name", "status", "margin", "witness"});
    status = print_report(validate_mean(parse_mean(e1), samples), csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "syntax error " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
