#include "qtrig/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtrig/io.hpp"
#include "qtrig/qtrig.hpp"

namespace qtrig::cli {
namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::optional<int> degree;
  std::vector<double> qs;
  std::string interval = "0,pi/2";
  std::optional<int> samples;
  std::string method = "direct";
  std::string format = "csv";
  std::string out_path;
  std::optional<int> round_digits;
  std::string weights;
  std::string polygon_path;
  int grid = 6;
  double tolerance = 1e-9;
  std::string family = "quantum";
  int lines = 50;
  unsigned seed = 1;
  std::string controls;
  bool basis_mode = false;
  std::string check_kind;
};

struct Context {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EvalMethod parse_method(const std::string& m) {
  if (m == "direct") return EvalMethod::Direct;
  if (m == "alg1") return EvalMethod::Alg1;
  if (m == "alg2") return EvalMethod::Alg2;
  throw UsageError("unknown method '" + m + "' (direct | alg1 | alg2)");
}

std::vector<QParam<double>> q_values(const RunConfig& cfg) {
  std::vector<QParam<double>> qs;
  for (double q : cfg.qs.empty() ? std::vector<double>{1.0} : cfg.qs) qs.emplace_back(q);
  return qs;
}

int sample_count(const RunConfig& cfg, int fallback) {
  const int n = cfg.samples.value_or(fallback);
  if (n < 2) throw UsageError("--samples must be at least 2");
  return n;
}

void emit(const Context& ctx, const std::string& payload) {
  if (ctx.cfg.out_path.empty()) {
    ctx.out << payload;
    return;
  }
  std::ofstream file(ctx.cfg.out_path, std::ios::binary);
  if (!file) throw io::InputError("cannot write " + ctx.cfg.out_path);
  file << payload;
}

std::optional<io::PolygonFile> load_polygon(const RunConfig& cfg, bool required) {
  if (cfg.polygon_path.empty()) {
    if (required) throw UsageError("--polygon is required");
    return std::nullopt;
  }
  return io::read_polygon_file(cfg.polygon_path);
}

WeightVector<double> resolve_weights(const RunConfig& cfg, const std::optional<io::PolygonFile>& file, int n) {
  std::vector<double> w;
  if (!cfg.weights.empty()) {
    w = io::parse_real_list(cfg.weights);
  } else if (file && file->weights) {
    w = *file->weights;
  } else {
    w.assign(static_cast<std::size_t>(n) + 1, 1.0);
  }
  if (static_cast<int>(w.size()) != n + 1) {
    throw UsageError(std::to_string(w.size()) + " weights given for degree " + std::to_string(n));
  }
  return WeightVector<double>(w);
}

// Fails with a singular-denominator error, or notes a missing shape guarantee.
void certify_or_throw(const Context& ctx, int n, const WeightVector<double>& w, const QParam<double>& q,
                      const Interval<double>& interval) {
  const auto cert = certify_weights(n, w, q, interval);
  if (!cert.nonsingular) {
    throw SingularDenominatorError("rational denominator vanishes near x = " + io::format_number(*cert.singular_x, 17) +
                                       " (q = " + io::format_number(q.value(), 17) + ")",
                                   *cert.singular_x, 0.0);
  }
  if (!cert.shape_guarantee) {
    ctx.err << "note: q = " << io::format_number(q.value(), 17)
            << ": no shape guarantee (needs q > 0, positive weights and a quarter-period interval)\n";
  }
}

std::string q_label(double q) { return "q=" + io::format_number(q, 6); }

// ---------------------------------------------------------------------------
// Sampled tables shared by basis, curve and rational output.

struct Table {
  int width = 0;                // values per row, excluding x
  std::string value_prefix;     // "B", "R" or "p"
  int first_index = 0;          // B0.. or p1..
  std::vector<double> q_of_row;
  std::vector<double> x_of_row;
  std::vector<std::vector<double>> values;
};

std::string render_table(const Context& ctx, const Table& t, bool multi_q, const std::string& json_key,
                         const std::string& title, const std::optional<ControlPolygon<double>>& polygon) {
  const auto& fmt = ctx.cfg.format;
  if (fmt == "csv") {
    std::vector<std::string> header;
    if (multi_q) header.push_back("q");
    header.push_back("x");
    for (int i = 0; i < t.width; ++i) header.push_back(t.value_prefix + std::to_string(i + t.first_index));
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < t.values.size(); ++r) {
      std::vector<double> row;
      if (multi_q) row.push_back(t.q_of_row[r]);
      row.push_back(t.x_of_row[r]);
      row.insert(row.end(), t.values[r].begin(), t.values[r].end());
      rows.push_back(std::move(row));
    }
    return io::write_csv(header, rows, ctx.cfg.round_digits);
  }
  if (fmt == "json") {
    json arr = json::array();
    for (std::size_t r = 0; r < t.values.size(); ++r) {
      json item;
      if (multi_q) item["q"] = t.q_of_row[r];
      item["x"] = t.x_of_row[r];
      item[json_key] = t.values[r];
      arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
  }
  // svg
  std::vector<io::SvgSeries> series;
  std::vector<double> distinct_q;
  for (double q : t.q_of_row) {
    if (std::find(distinct_q.begin(), distinct_q.end(), q) == distinct_q.end()) distinct_q.push_back(q);
  }
  const bool planar = json_key == "point" && t.width == 2;
  if (json_key == "point" && t.width > 2) throw UsageError("svg output needs 1- or 2-dimensional points");
  if (planar && polygon) {
    io::SvgSeries ctrl{{}, "black", true, true, "control polygon"};
    for (int k = 0; k <= polygon->degree(); ++k) ctrl.points.emplace_back(polygon->points()(0, k), polygon->points()(1, k));
    series.push_back(std::move(ctrl));
  }
  for (std::size_t qi = 0; qi < distinct_q.size(); ++qi) {
    const double q = distinct_q[qi];
    if (planar) {
      io::SvgSeries s{{}, io::series_color(qi), false, false, q_label(q)};
      for (std::size_t r = 0; r < t.values.size(); ++r) {
        if (t.q_of_row[r] == q) s.points.emplace_back(t.values[r][0], t.values[r][1]);
      }
      series.push_back(std::move(s));
    } else {
      for (int k = 0; k < t.width; ++k) {
        io::SvgSeries s{{}, io::series_color(qi), false, false,
                        t.value_prefix + std::to_string(k + t.first_index) + " " + q_label(q)};
        for (std::size_t r = 0; r < t.values.size(); ++r) {
          if (t.q_of_row[r] == q) s.points.emplace_back(t.x_of_row[r], t.values[r][k]);
        }
        series.push_back(std::move(s));
      }
    }
  }
  return io::write_svg(series, planar, title);
}

void check_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "svg") {
    throw UsageError("--format must be csv, json or svg");
  }
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_basis(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (!cfg.degree) throw UsageError("--degree is required");
  const int n = *cfg.degree;
  if (n < 0) throw UsageError("--degree must be nonnegative");
  const auto interval = io::parse_interval(cfg.interval);
  const auto qs = q_values(cfg);
  const int count = sample_count(cfg, 129);
  Table t{n + 1, "B", 0, {}, {}, {}};
  for (const auto& q : qs) {
    for (double x : interval.uniform_grid(count)) {
      const auto basis = basis_all_direct(n, x, q, interval);
      t.q_of_row.push_back(q.value());
      t.x_of_row.push_back(x);
      t.values.emplace_back(basis.values.data(), basis.values.data() + basis.values.size());
    }
  }
  emit(ctx, render_table(ctx, t, qs.size() > 1, "values",
                         "quantum trigonometric Bernstein basis, degree " + std::to_string(n), std::nullopt));
  return kOk;
}

int cmd_curve(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const auto file = load_polygon(cfg, true);
  const auto& polygon = file->polygon;
  if (cfg.degree && *cfg.degree != polygon.degree()) {
    throw UsageError("--degree " + std::to_string(*cfg.degree) + " does not match the polygon (degree " +
                     std::to_string(polygon.degree()) + ")");
  }
  const auto method = parse_method(cfg.method);
  const auto interval = io::parse_interval(cfg.interval);
  const auto qs = q_values(cfg);
  const int count = sample_count(cfg, 129);
  Table t{polygon.dimension(), "p", 1, {}, {}, {}};
  for (const auto& q : qs) {
    for (const auto& s : sample_curve(polygon, q, interval, count, method)) {
      t.q_of_row.push_back(q.value());
      t.x_of_row.push_back(s.x);
      t.values.emplace_back(s.point.data(), s.point.data() + s.point.size());
    }
  }
  emit(ctx, render_table(ctx, t, qs.size() > 1, "point", "quantum trigonometric Bezier curve", polygon));
  return kOk;
}

int cmd_rational(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const auto file = load_polygon(cfg, !cfg.basis_mode);
  const auto interval = io::parse_interval(cfg.interval);
  const auto qs = q_values(cfg);
  const int count = sample_count(cfg, 129);

  if (cfg.basis_mode) {
    int n = 0;
    if (cfg.degree) {
      n = *cfg.degree;
    } else if (file) {
      n = file->polygon.degree();
    } else {
      throw UsageError("--basis needs --degree or --polygon");
    }
    if (n < 0) throw UsageError("--degree must be nonnegative");
    const auto w = resolve_weights(cfg, file, n);
    Table t{n + 1, "R", 0, {}, {}, {}};
    for (const auto& q : qs) {
      certify_or_throw(ctx, n, w, q, interval);
      for (double x : interval.uniform_grid(count)) {
        const auto r = rational_basis_all(n, x, q, interval, w);
        t.q_of_row.push_back(q.value());
        t.x_of_row.push_back(x);
        t.values.emplace_back(r.values.data(), r.values.data() + r.values.size());
      }
    }
    emit(ctx, render_table(ctx, t, qs.size() > 1, "values",
                           "rational quantum trigonometric Bernstein basis, degree " + std::to_string(n),
                           std::nullopt));
    return kOk;
  }

  const auto& polygon = file->polygon;
  if (cfg.degree && *cfg.degree != polygon.degree()) {
    throw UsageError("--degree does not match the polygon");
  }
  const auto w = resolve_weights(cfg, file, polygon.degree());
  Table t{polygon.dimension(), "p", 1, {}, {}, {}};
  for (const auto& q : qs) {
    certify_or_throw(ctx, polygon.degree(), w, q, interval);
    for (const auto& s : rational_sample(polygon, w, q, interval, count)) {
      t.q_of_row.push_back(q.value());
      t.x_of_row.push_back(s.x);
      t.values.emplace_back(s.point.data(), s.point.data() + s.point.size());
    }
  }
  emit(ctx, render_table(ctx, t, qs.size() > 1, "point", "rational quantum trigonometric Bezier curve", polygon));
  return kOk;
}

int finish_check(const Context& ctx, json report, const std::string& summary) {
  const bool pass = report.at("pass").get<bool>();
  ctx.out << (pass ? "PASS " : "FAIL ") << summary << "\n";
  const std::string payload = report.dump() + "\n";
  if (ctx.cfg.out_path.empty()) {
    ctx.out << payload;
  } else {
    emit(ctx, payload);
  }
  return pass ? kOk : kViolation;
}

int check_tp(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (!cfg.degree) throw UsageError("--degree is required for tp");
  const int n = *cfg.degree;
  if (n < 0) throw UsageError("--degree must be nonnegative");
  if (cfg.grid < 1) throw UsageError("--grid must be at least 1");
  const auto interval = io::parse_interval(cfg.interval);
  // Size cap is checked before any evaluation.
  const auto minors = count_minors(n + 1, cfg.grid);
  if (minors > kMaxMinors) {
    throw SizeCapExceededError("tp check refused: more than " + std::to_string(kMaxMinors) + " minors", minors);
  }
  std::vector<double> points(static_cast<std::size_t>(cfg.grid));
  for (int j = 0; j < cfg.grid; ++j) {
    points[j] = interval.a() + interval.length() * double(j + 1) / double(cfg.grid + 1);
  }
  std::optional<WeightVector<double>> weights;
  if (cfg.family == "rational") {
    weights = resolve_weights(cfg, load_polygon(cfg, false), n);
  } else if (cfg.family != "quantum" && cfg.family != "classical") {
    throw UsageError("--family must be quantum, classical or rational");
  }
  json results = json::array();
  bool pass = true;
  double worst = 0.0;
  bool first = true;
  for (const auto& q : q_values(cfg)) {
    BasisFamily<double> family = QuantumFamily{};
    if (cfg.family == "classical") family = ClassicalFamily{};
    if (weights) {
      certify_or_throw(ctx, n, *weights, q, interval);
      family = RationalFamily<double>{*weights};
    }
    const auto m = collocation<double>(family, n, q, interval, points);
    const auto rep = total_positivity_check(m, cfg.tolerance);
    json r{{"q", q.value()},
           {"is_tp", rep.is_tp},
           {"minors_checked", rep.minors_checked},
           {"worst_minor", rep.worst_minor},
           {"worst_scaled_minor", rep.worst_scaled_minor}};
    if (rep.witness) r["witness"] = {{"rows", rep.witness->rows}, {"cols", rep.witness->cols}};
    if (weights) {
      const double col_err = (m.entries.colwise().sum().array() - 1.0).abs().maxCoeff();
      r["max_column_sum_error"] = col_err;
      if (col_err > 1e-12) pass = false;
    }
    pass = pass && rep.is_tp;
    if (first || rep.worst_scaled_minor < worst) worst = rep.worst_scaled_minor;
    first = false;
    results.push_back(std::move(r));
  }
  json report{{"check", "tp"}, {"family", cfg.family}, {"degree", n}, {"pass", pass}, {"results", results}};
  return finish_check(ctx, report, "tp: worst scaled minor " + io::format_number(worst, 6) + " (tolerance " +
                                        io::format_number(cfg.tolerance, 6) + ")");
}

ControlPolygon<double> planar_polygon(const io::PolygonFile& file) {
  if (file.polygon.dimension() != 2) throw UsageError("this check needs a planar (2-D) polygon");
  return file.polygon;
}

int check_hull(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const auto file = load_polygon(cfg, true);
  const auto polygon = planar_polygon(*file);
  const auto w = resolve_weights(cfg, file, polygon.degree());
  const auto interval = io::parse_interval(cfg.interval);
  const int count = sample_count(cfg, 129);
  std::vector<Point2<double>> ctrl;
  for (int k = 0; k <= polygon.degree(); ++k) ctrl.emplace_back(polygon.points().col(k));
  const auto hull = convex_hull(ctrl);
  const double slack = 1e-12 * std::max(1.0, polygon.diameter());
  json results = json::array();
  int violations = 0;
  for (const auto& q : q_values(cfg)) {
    certify_or_throw(ctx, polygon.degree(), w, q, interval);
    int outside = 0;
    for (const auto& s : rational_sample(polygon, w, q, interval, count)) {
      if (!in_convex_hull<double>(hull, s.point.head<2>(), slack)) ++outside;
    }
    violations += outside;
    results.push_back({{"q", q.value()}, {"samples", count}, {"outside", outside}});
  }
  json report{{"check", "hull"}, {"pass", violations == 0}, {"results", results}};
  return finish_check(ctx, report, "hull: " + std::to_string(violations) + " samples outside the control hull");
}

int check_vdp(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const auto file = load_polygon(cfg, true);
  const auto polygon = planar_polygon(*file);
  const auto w = resolve_weights(cfg, file, polygon.degree());
  const auto interval = io::parse_interval(cfg.interval);
  const int count = sample_count(cfg, 2048);
  if (cfg.lines < 1) throw UsageError("--lines must be at least 1");
  const Vectord lo = polygon.points().rowwise().minCoeff();
  const Vectord hi = polygon.points().rowwise().maxCoeff();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Line2<double>> lines;
  for (int i = 0; i < cfg.lines; ++i) {
    const double t = 2.0 * std::numbers::pi * unit(rng);
    Point2<double> p(lo[0] + (hi[0] - lo[0]) * unit(rng), lo[1] + (hi[1] - lo[1]) * unit(rng));
    lines.push_back({p, Point2<double>(std::cos(t), std::sin(t))});
  }
  json results = json::array();
  int violations = 0;
  for (const auto& q : q_values(cfg)) {
    certify_or_throw(ctx, polygon.degree(), w, q, interval);
    const Matrixd pts = sample_points(rational_sample(polygon, w, q, interval, count));
    int worst_excess = -1000000;
    int bad = 0;
    for (const auto& line : lines) {
      const int curve = line_crossings(pts, line);
      const int ctrl = line_crossings(polygon.points(), line);
      worst_excess = std::max(worst_excess, curve - ctrl);
      if (curve > ctrl) ++bad;
    }
    violations += bad;
    results.push_back({{"q", q.value()}, {"lines", cfg.lines}, {"violations", bad}, {"max_excess_crossings", worst_excess}});
  }
  json report{{"check", "vdp"}, {"pass", violations == 0}, {"results", results}};
  return finish_check(ctx, report, "vdp: " + std::to_string(violations) + " lines crossed more often by the curve");
}

int check_signs(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  std::vector<double> controls;
  if (!cfg.controls.empty()) {
    controls = io::parse_real_list(cfg.controls);
  } else {
    const auto file = load_polygon(cfg, false);
    if (!file) throw UsageError("signs needs --controls or a 1-D --polygon");
    if (file->polygon.dimension() != 1) throw UsageError("signs needs scalar (1-D) control values");
    const auto& p = file->polygon.points();
    controls.assign(p.data(), p.data() + p.size());
  }
  const auto polygon = ControlPolygon<double>(Matrixd(Eigen::Map<const Eigen::RowVectorXd>(
      controls.data(), static_cast<Eigen::Index>(controls.size()))));
  const auto interval = io::parse_interval(cfg.interval);
  const int count = sample_count(cfg, 512);
  const int ctrl_changes = sign_changes_seq(SignSequence<double>::relative(controls));
  json results = json::array();
  bool pass = true;
  std::string summary;
  for (const auto& q : q_values(cfg)) {
    std::vector<double> values;
    for (const auto& s : sample_curve(polygon, q, interval, count, EvalMethod::Direct)) values.push_back(s.point[0]);
    const int curve_changes = sign_changes_function<double>(values);
    pass = pass && curve_changes <= ctrl_changes;
    results.push_back({{"q", q.value()}, {"curve_sign_changes", curve_changes}, {"control_sign_changes", ctrl_changes}});
    summary += (summary.empty() ? "" : "; ") + q_label(q.value()) + ": curve " + std::to_string(curve_changes) +
               ", controls " + std::to_string(ctrl_changes);
  }
  if (!interval.quarter_period()) {
    ctx.err << "note: the sign-change bound is only guaranteed on quarter-period intervals\n";
  }
  json report{{"check", "signs"}, {"pass", pass}, {"results", results}};
  return finish_check(ctx, report, "signs: " + summary);
}

int cmd_check(const Context& ctx) {
  const auto& kind = ctx.cfg.check_kind;
  if (kind == "tp") return check_tp(ctx);
  if (kind == "hull") return check_hull(ctx);
  if (kind == "vdp") return check_vdp(ctx);
  return check_signs(ctx);
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--degree", cfg.degree, "Basis degree n");
  sub->add_option("--q", cfg.qs, "Shape parameter q (repeatable or comma separated)")->delimiter(',');
  sub->add_option("--interval", cfg.interval, "Parameter interval 'a,b' in radians; pi fractions accepted")
      ->capture_default_str();
  sub->add_option("--samples", cfg.samples, "Number of uniformly spaced samples");
  sub->add_option("--format", cfg.format, "csv | json | svg")->capture_default_str();
  sub->add_option("--out", cfg.out_path, "Output file (default: standard output)");
  sub->add_option("--round", cfg.round_digits, "Round CSV values to this many significant digits");
  sub->add_option("--weights", cfg.weights, "Comma-separated weights (overrides the polygon file)");
  sub->add_option("--polygon", cfg.polygon_path, "Control polygon JSON file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quantum trigonometric Bernstein bases and Bezier curves", "qtrig"};
  app.require_subcommand(1);

  auto* basis = app.add_subcommand("basis", "Sample the basis functions B^n_k(x;q)");
  add_common(basis, cfg);

  auto* curve = app.add_subcommand("curve", "Sample a quantum trigonometric Bezier curve");
  add_common(curve, cfg);
  curve->add_option("--method", cfg.method, "direct | alg1 | alg2")->capture_default_str();

  auto* rational = app.add_subcommand("rational", "Sample a rational curve, or its basis with --basis");
  add_common(rational, cfg);
  rational->add_flag("--basis", cfg.basis_mode, "Sample the rational basis functions instead of a curve");

  auto* check = app.add_subcommand("check", "Shape checks: tp | vdp | hull | signs");
  add_common(check, cfg);
  check->add_option("kind", cfg.check_kind, "tp | vdp | hull | signs")
      ->required()
      ->check(CLI::IsMember({"tp", "vdp", "hull", "signs"}));
  check->add_option("--grid", cfg.grid, "Interior collocation points for tp")->capture_default_str();
  check->add_option("--tolerance", cfg.tolerance, "Scaled minor tolerance for tp")->capture_default_str();
  check->add_option("--family", cfg.family, "quantum | classical | rational (tp)")->capture_default_str();
  check->add_option("--lines", cfg.lines, "Random lines for vdp")->capture_default_str();
  check->add_option("--seed", cfg.seed, "Random seed for vdp lines")->capture_default_str();
  check->add_option("--controls", cfg.controls, "Scalar control values for signs, e.g. '1,-2,3'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    const int code = app.exit(e, help_out, err);
    out << help_out.str();
    return code == 0 ? kOk : kUsage;
  }

  const Context ctx{cfg, out, err};
  try {
    check_format(cfg);
    if (basis->parsed()) return cmd_basis(ctx);
    if (curve->parsed()) return cmd_curve(ctx);
    if (rational->parsed()) return cmd_rational(ctx);
    return cmd_check(ctx);
  } catch (const InvalidIntervalError& e) {
    err << "error: invalid interval: " << e.what() << "\n";
    return kInvalidInterval;
  } catch (const SingularDenominatorError& e) {
    err << "error: singular denominator: " << e.what() << "\n";
    return kSingular;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace qtrig::cli
