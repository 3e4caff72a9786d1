#include "kahlercone/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kahlercone/classifier.hpp"
#include "kahlercone/energy.hpp"
#include "kahlercone/io.hpp"
#include "kahlercone/tf.hpp"

namespace kc::cli {

using Json = nlohmann::ordered_json;

namespace {

struct CommandName {
  Command cmd;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::Classify, "classify"},       {Command::ExtremalPoly, "extremal-poly"},
    {Command::Threshold, "threshold"},     {Command::Split, "split"},
    {Command::Delta, "delta"},             {Command::EnergyDemo, "energy-demo"},
    {Command::TfSweep, "tf-sweep"},        {Command::TfXs, "tf-xs"},
};

Command parse_command(const std::string& s) {
  for (const auto& c : kCommands) {
    if (s == c.name) return c.cmd;
  }
  throw ConfigError("command", "unknown command '" + s + "'");
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw ConfigError("format", "expected json, csv or text, got '" + s + "'");
}

Rat parse_rat(const std::string& field, const std::string& text) {
  try {
    return Rat::parse(text);
  } catch (const std::exception&) {
    throw ConfigError(field, "malformed rational '" + text + "' (expected \"num/den\" or an integer)");
  }
}

Rat rat_of(const std::string& field, const Json& v) { return io::rat_from_json(v, field); }

long long integer_of(const std::string& field, const Json& v) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_string()) {
    const Rat r = parse_rat(field, v.get<std::string>());
    if (r.is_integer()) return r.num().get_si();
  }
  throw ConfigError(field, "expected an integer");
}

unsigned positive_of(const std::string& field, const Json& v) {
  const long long n = integer_of(field, v);
  if (n < 1) throw ConfigError(field, "must be >= 1");
  return static_cast<unsigned>(n);
}

void check_class(AdmissibleClass& c, const std::string& prefix) {
  if (c.factors.empty()) throw ConfigError(prefix + "factors", "at least one base factor is required");
  try {
    c.validate();
  } catch (const InvalidClass& e) {
    const std::string what = e.what();
    throw ConfigError(prefix + e.field(), what.substr(e.field().size() + 2));
  }
}

void apply_json(RunConfig& cfg, const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "top level must be an object");
  if (doc.contains("command")) {
    if (!doc["command"].is_string()) throw ConfigError("command", "expected a string");
    cfg.command = parse_command(doc["command"].get<std::string>());
  }
  if (doc.contains("class")) cfg.cls = io::class_from_json(doc["class"], "class.");
  if (doc.contains("tf")) {
    const Json& t = doc["tf"];
    if (!t.is_object()) throw ConfigError("tf", "expected an object {x, s, kappa}");
    if (t.contains("x")) cfg.tf.x = rat_of("tf.x", t["x"]);
    if (t.contains("s")) cfg.tf.s = rat_of("tf.s", t["s"]);
    if (t.contains("kappa")) cfg.tf.kappa = rat_of("tf.kappa", t["kappa"]);
  }
  if (doc.contains("fixture")) {
    const Json& f = doc["fixture"];
    if (!f.is_object() || f.value("kind", std::string()) != "double-root") {
      throw ConfigError("fixture.kind", "only \"double-root\" is supported");
    }
    DoubleRootFixture fx;
    if (f.contains("z0")) fx.z0 = rat_of("fixture.z0", f["z0"]);
    cfg.fixture = fx;
  }
  if (doc.contains("sweep")) {
    const Json& s = doc["sweep"];
    if (!s.is_object()) throw ConfigError("sweep", "expected an object {lo, hi, points}");
    if (s.contains("lo")) cfg.sweep.lo = rat_of("sweep.lo", s["lo"]);
    if (s.contains("hi")) cfg.sweep.hi = rat_of("sweep.hi", s["hi"]);
    if (s.contains("points")) cfg.sweep.points = positive_of("sweep.points", s["points"]);
  }
  if (doc.contains("format")) {
    if (!doc["format"].is_string()) throw ConfigError("format", "expected a string");
    cfg.format = parse_format(doc["format"].get<std::string>());
  }
  if (doc.contains("width")) cfg.width = rat_of("width", doc["width"]);
  if (doc.contains("quadrature")) {
    const Json& q = doc["quadrature"];
    if (!q.is_object()) throw ConfigError("quadrature", "expected an object");
    if (q.contains("order")) cfg.quadrature.order = positive_of("quadrature.order", q["order"]);
    if (q.contains("panels")) cfg.quadrature.panels = positive_of("quadrature.panels", q["panels"]);
    if (q.contains("tolerance")) {
      if (!q["tolerance"].is_number()) throw ConfigError("quadrature.tolerance", "expected a number");
      cfg.quadrature.tolerance = q["tolerance"].get<double>();
    }
    if (q.contains("max_doublings")) {
      cfg.quadrature.max_doublings = static_cast<int>(integer_of("quadrature.max_doublings", q["max_doublings"]));
    }
  }
  if (doc.contains("samples")) cfg.samples = positive_of("samples", doc["samples"]);
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ConfigError("output_dir", "expected a string");
    cfg.out_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("seed")) cfg.seed = integer_of("seed", doc["seed"]);
}

void check_config(const RunConfig& cfg) {
  if (cfg.width.sign() <= 0) throw ConfigError("width", "must be > 0");
  if (cfg.samples < 2) throw ConfigError("samples", "need at least 2 grid points");
  if (cfg.quadrature.order != 8 && cfg.quadrature.order != 16 && cfg.quadrature.order != 32 &&
      cfg.quadrature.order != 64) {
    throw ConfigError("quadrature.order", "supported orders are 8, 16, 32, 64");
  }
  if (!(cfg.quadrature.tolerance > 0.0)) throw ConfigError("quadrature.tolerance", "must be > 0");
  if (cfg.tf.kappa.sign() <= 0) throw ConfigError("tf.kappa", "cone angle parameter must be > 0");
  if (cfg.tf.x && (cfg.tf.x->sign() <= 0 || *cfg.tf.x >= Rat(1))) throw ConfigError("tf.x", "must lie in (0,1)");
  if (cfg.fixture && (cfg.fixture->z0 <= Rat(-1) || cfg.fixture->z0 >= Rat(1))) {
    throw ConfigError("fixture.z0", "must lie in (-1,1)");
  }
}

// ---------------------------------------------------------------------------
// JSON helpers

Json poly_json(const RatPoly& p) { return io::to_json(p); }

Json interval_json(const RatInterval& iv) { return Json::array({iv.lo.str(), iv.hi.str()}); }

Json approx(double v) {
  Json j;
  j["value"] = v;
  j["approx"] = true;
  return j;
}

Json roots_json(const std::vector<RootRecord>& roots) {
  Json a = Json::array();
  for (const auto& r : roots) {
    Json j;
    j["enclosure"] = interval_json(r.enclosure);
    j["multiplicity"] = r.multiplicity;
    a.push_back(std::move(j));
  }
  return a;
}

Json label_json(const SingularityLabel& l) {
  Json j;
  j["kind"] = to_string(l.kind);
  if (l.multiplicity > 0) j["multiplicity"] = l.multiplicity;
  if (l.kappa) j["kappa"] = interval_json(*l.kappa);
  if (l.order) j["order"] = *l.order;
  return j;
}

Json quadrature_json(const QuadratureSpec& q) {
  Json j;
  j["order"] = q.order;
  j["panels"] = q.panels;
  j["tolerance"] = q.tolerance;
  j["max_doublings"] = q.max_doublings;
  return j;
}

// ---------------------------------------------------------------------------
// Output tables

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

std::string dstr(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_table(std::ostream& os, const Table& t) {
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << "\r\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

void write_text(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object() && v.contains("approx")) {
      os << pad << it.key() << ": ~" << dstr(v["value"].get<double>()) << "\n";
    } else if (v.is_object()) {
      os << pad << it.key() << ":\n";
      write_text(os, v, indent + 1);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << pad << it.key() << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << pad << "  [" << i << "]\n";
        write_text(os, v[i], indent + 2);
      }
    } else {
      os << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

struct Report {
  Json json;
  Table table;
  std::vector<std::pair<std::string, Table>> plots;  // file name, contents
};

// ---------------------------------------------------------------------------
// Inputs

struct Subject {
  ExtremalProfile profile;
  std::optional<AdmissibleClass> cls;
};

AdmissibleClass tf_class(const RunConfig& cfg) {
  if (!cfg.tf.x) throw ConfigError("tf.x", "missing");
  if (!cfg.tf.s) throw ConfigError("tf.s", "missing");
  return TFParams{*cfg.tf.x, *cfg.tf.s, cfg.tf.kappa}.to_class();
}

Subject subject_of(const RunConfig& cfg, bool allow_fixture) {
  if (cfg.cls) return {profile_of(*cfg.cls), cfg.cls};
  if (cfg.fixture) {
    if (!allow_fixture) throw ConfigError("fixture", "this command needs an admissible class");
    const Rat& z0 = cfg.fixture->z0;
    const RatPoly sq = pow(RatPoly::linear_root(z0), 2);
    return {{RatPoly::constant(Rat(1)), sq * RatPoly({Rat(1), Rat(0), Rat(-1)}), Rat(1)}, std::nullopt};
  }
  if (cfg.tf.x || cfg.tf.s) {
    AdmissibleClass c = tf_class(cfg);
    return {profile_of(c), c};
  }
  throw ConfigError("class", "no class data given (use class, tf or fixture)");
}

void echo_input(Json& j, const RunConfig& cfg) {
  j["command"] = to_string(*cfg.command);
  if (cfg.cls) j["class"] = io::to_json(*cfg.cls);
  if (cfg.tf.x || cfg.tf.s) {
    Json t;
    if (cfg.tf.x) t["x"] = cfg.tf.x->str();
    if (cfg.tf.s) t["s"] = cfg.tf.s->str();
    t["kappa"] = cfg.tf.kappa.str();
    j["tf"] = std::move(t);
  }
  if (cfg.fixture) {
    Json f;
    f["kind"] = "double-root";
    f["z0"] = cfg.fixture->z0.str();
    j["fixture"] = std::move(f);
  }
  j["width"] = cfg.width.str();
  if (cfg.seed) j["seed"] = *cfg.seed;
}

Table f_omega_samples(const ExtremalProfile& prof, unsigned samples) {
  Table t{{"z", "F_omega", "F_omega_approx"}, {}};
  for (unsigned i = 0; i < samples; ++i) {
    const Rat z = Rat(-1) + Rat(2 * static_cast<long>(i), static_cast<long>(samples - 1));
    const Rat v = prof.F.eval(z);
    t.rows.push_back({z.str(), v.str(), dstr(v.to_double())});
  }
  return t;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_classify(const RunConfig& cfg, Report& r) {
  const Subject sub = subject_of(cfg, true);
  const Positivity pos = is_nonneg_on(sub.profile.F, Rat(-1), Rat(1));
  const auto roots = isolate_roots(sub.profile.F, Rat(-1), Rat(1), cfg.width);
  r.json["regime"] = to_string(regime_of(pos));
  r.json["positivity"] = to_string(pos);
  r.json["roots"] = roots_json(roots);
  r.table = {{"regime", "positivity", "root_count"},
             {{to_string(regime_of(pos)), to_string(pos), std::to_string(roots.size())}}};
  if (!cfg.cls && cfg.tf.x && cfg.tf.s) {
    r.json["tf_kappa_bound"] = tf_kappa_bound(*cfg.tf.x, *cfg.tf.s).str();
    if (cfg.tf.s->sign() < 0 && cfg.tf.kappa == Rat(1)) {
      const TFCaseReport c = tf_regime(*cfg.tf.x, *cfg.tf.s, cfg.width);
      Json t;
      t["case"] = c.case_number;
      t["near_critical"] = c.near_critical;
      t["delta"] = c.delta.str();
      t["xs_enclosure"] = interval_json(c.xs.enclosure);
      if (c.vertex) {
        t["vertex"] = c.vertex->str();
        t["vertex_inside"] = c.vertex_inside;
      }
      if (c.split) t["parts"] = c.split->parts.size();
      r.json["tf_case"] = std::move(t);
    }
  }
  r.plots.emplace_back("f_omega.csv", f_omega_samples(sub.profile, cfg.samples));
}

void cmd_extremal_poly(const RunConfig& cfg, Report& r) {
  const Subject sub = subject_of(cfg, false);
  const ExtremalData e = extremal_polynomial(*sub.cls);
  r.json["p_c"] = poly_json(e.p_c);
  r.json["F_omega"] = poly_json(e.F_omega);
  r.json["F_zero"] = poly_json(e.F_zero);
  r.json["F_lin"] = poly_json(e.F_lin);
  r.json["A"] = e.A.str();
  r.json["B"] = e.B.str();
  Json m;
  m["alpha0"] = e.moments.alpha0.str();
  m["alpha1"] = e.moments.alpha1.str();
  m["alpha2"] = e.moments.alpha2.str();
  m["beta0"] = e.moments.beta0.str();
  m["beta1"] = e.moments.beta1.str();
  r.json["moments"] = std::move(m);
  r.table.header = {"power", "F_omega", "F_zero", "F_lin", "p_c"};
  const int deg = std::max({e.F_omega.degree(), e.F_zero.degree(), e.F_lin.degree(), e.p_c.degree()});
  for (int i = 0; i <= deg; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r.table.rows.push_back(
        {std::to_string(i), e.F_omega.coeff(k).str(), e.F_zero.coeff(k).str(), e.F_lin.coeff(k).str(), e.p_c.coeff(k).str()});
  }
  r.plots.emplace_back("f_omega.csv", f_omega_samples(sub.profile, cfg.samples));
}

void cmd_threshold(const RunConfig& cfg, Report& r) {
  const Subject sub = subject_of(cfg, false);
  const KappaDecomposition k = kappa_decomposition(sub.cls->factors);
  const auto angle = min_positive_angle(sub.cls->factors, cfg.width);
  r.json["G_x"] = poly_json(k.G_x);
  r.json["G_x_positivity"] = to_string(is_nonneg_on(k.G_x, Rat(-1), Rat(1)));
  r.json["kappa_threshold"] = angle ? interval_json(*angle) : Json(nullptr);
  r.table = {{"kappa_lo", "kappa_hi"}, {}};
  if (angle) r.table.rows.push_back({angle->lo.str(), angle->hi.str()});
  if (!cfg.cls && cfg.tf.x && cfg.tf.s) r.json["tf_kappa_bound"] = tf_kappa_bound(*cfg.tf.x, *cfg.tf.s).str();
}

void cmd_split(const RunConfig& cfg, Report& r) {
  const Subject sub = subject_of(cfg, true);
  const SplitReport s = split(sub.profile, cfg.width);
  r.json["regime"] = to_string(s.regime);
  r.json["roots"] = roots_json(s.roots);
  Json parts = Json::array();
  r.table.header = {"part", "left_lo", "left_hi", "right_lo", "right_hi", "positive", "left_label", "right_label"};
  for (std::size_t i = 0; i < s.parts.size(); ++i) {
    const Part& p = s.parts[i];
    Json j;
    j["left_end"] = interval_json(p.left_end);
    j["right_end"] = interval_json(p.right_end);
    j["positive"] = p.positive;
    if (p.left_label) j["left_label"] = label_json(*p.left_label);
    if (p.right_label) j["right_label"] = label_json(*p.right_label);
    parts.push_back(std::move(j));
    r.table.rows.push_back({std::to_string(i), p.left_end.lo.str(), p.left_end.hi.str(), p.right_end.lo.str(),
                            p.right_end.hi.str(), p.positive ? "true" : "false",
                            p.left_label ? to_string(p.left_label->kind) : "",
                            p.right_label ? to_string(p.right_label->kind) : ""});
  }
  r.json["parts"] = std::move(parts);
  r.plots.emplace_back("f_omega.csv", f_omega_samples(sub.profile, cfg.samples));
}

void cmd_delta(const RunConfig& cfg, Report& r) {
  const Subject sub = subject_of(cfg, false);
  const Properness p = properness_delta(sub.profile, cfg.width);
  r.json["delta"] = p.delta.str();
  r.json["min_right"] = interval_json(p.right);
  r.json["min_left"] = interval_json(p.left);
  r.table = {{"delta", "right_lo", "right_hi", "left_lo", "left_hi"},
             {{p.delta.str(), p.right.lo.str(), p.right.hi.str(), p.left.lo.str(), p.left.hi.str()}}};
  r.plots.emplace_back("f_omega.csv", f_omega_samples(sub.profile, cfg.samples));
}

void cmd_energy_demo(const RunConfig& cfg, Report& r) {
  const Subject sub = subject_of(cfg, true);
  const ExtremalProfile& prof = sub.profile;
  const QuadratureSpec& q = cfg.quadrature;
  const Regime regime = classify(prof);
  r.json["regime"] = to_string(regime);
  r.json["quadrature"] = quadrature_json(q);
  r.table.header = {"sequence", "index", "value", "linear_term"};

  if (regime == Regime::ExistsExtremal) {
    const Properness p = properness_delta(prof, cfg.width);
    const SymplecticPotential uc{prof.kappa, RatPoly()};
    const SymplecticPotential u1{prof.kappa, RatPoly::constant(Rat(1))};
    r.json["delta"] = p.delta.str();
    Json pots = Json::array();
    for (const auto* u : {&uc, &u1}) {
      Json j;
      j["w"] = poly_json(u->w);
      j["L"] = l_functional(prof, *u).str();
      j["K_energy"] = approx(k_energy(prof, *u, q));
      j["integral_u"] = approx(j_proxy(*u));
      pots.push_back(std::move(j));
      r.table.rows.push_back({"potential", u->w.to_string(), dstr(k_energy(prof, *u, q)), l_functional(prof, *u).str()});
    }
    r.json["potentials"] = std::move(pots);
  } else if (regime == Regime::BoundedNotProper) {
    const double z0 = repeated_root_center(prof);
    r.json["z0"] = approx(z0);
    Json breaker = Json::array();
    Table bt{{"k", "l_value", "j_value"}, {}};
    std::vector<double> ks, ls;
    for (double k = 8; k <= 128; k *= 2) {
      const BreakerPoint b = properness_breaker(prof, z0, k, q);
      Json j;
      j["k"] = static_cast<long long>(k);
      j["L"] = approx(b.l_value);
      j["integral"] = approx(b.j_value);
      breaker.push_back(std::move(j));
      bt.rows.push_back({dstr(k), dstr(b.l_value), dstr(b.j_value)});
      r.table.rows.push_back({"breaker", dstr(k), dstr(b.l_value), dstr(b.j_value)});
      ks.push_back(k);
      ls.push_back(b.l_value);
    }
    r.json["breaker"] = std::move(breaker);
    r.json["breaker_exponent"] = approx(loglog_slope(ks, ls));
    Json calabi = Json::array();
    Table ct{{"n", "calabi"}, {}};
    std::vector<double> ns, cs;
    for (double n = 16; n <= 128; n *= 2) {
      const CalabiPoint c = calabi_minimizing_sequence(prof, z0, n, q);
      Json j;
      j["n"] = static_cast<long long>(n);
      j["calabi"] = approx(c.calabi);
      j["positive_profile"] = c.positive_profile;
      calabi.push_back(std::move(j));
      ct.rows.push_back({dstr(n), dstr(c.calabi)});
      r.table.rows.push_back({"calabi", dstr(n), dstr(c.calabi), ""});
      ns.push_back(n);
      cs.push_back(c.calabi);
    }
    r.json["calabi"] = std::move(calabi);
    r.json["calabi_exponent"] = approx(loglog_slope(ns, cs));
    r.json["calabi_limit_integral"] = approx(calabi_limit_integral(q));
    r.plots.emplace_back("breaker.csv", std::move(bt));
    r.plots.emplace_back("calabi.csv", std::move(ct));
  } else {
    const UnboundedDirection dir = unbounded_direction(prof, q);
    Json d;
    d["center"] = dir.center.str();
    d["half_width"] = dir.half_width.str();
    d["amplitude"] = approx(dir.amplitude);
    d["linear"] = approx(dir.linear);
    r.json["direction"] = std::move(d);
    r.json["calabi_lower_bound"] = calabi_lower_bound(prof, dir.center - dir.half_width, dir.center + dir.half_width).str();
    Json seq = Json::array();
    Table ut{{"k", "energy", "linear_term"}, {}};
    for (double k = 1; k <= 64; k *= 2) {
      const DirectionPoint p = energy_along(prof, dir, k, q);
      Json j;
      j["k"] = static_cast<long long>(k);
      j["K_energy"] = approx(p.energy);
      j["slope"] = approx(p.slope);
      seq.push_back(std::move(j));
      ut.rows.push_back({dstr(k), dstr(p.energy), dstr(k * dir.linear)});
      r.table.rows.push_back({"unbounded", dstr(k), dstr(p.energy), dstr(k * dir.linear)});
    }
    r.json["sequence"] = std::move(seq);
    r.plots.emplace_back("unbounded.csv", std::move(ut));
  }
  r.plots.emplace_back("f_omega.csv", f_omega_samples(prof, cfg.samples));
}

void cmd_tf_sweep(const RunConfig& cfg, Report& r) {
  if (!cfg.tf.s) throw ConfigError("tf.s", "missing");
  Json sw;
  sw["lo"] = cfg.sweep.lo.str();
  sw["hi"] = cfg.sweep.hi.str();
  sw["points"] = cfg.sweep.points;
  r.json["sweep"] = std::move(sw);
  const auto rows = tf_sweep(*cfg.tf.s, cfg.sweep.lo, cfg.sweep.hi, cfg.sweep.points, cfg.width);
  Json a = Json::array();
  r.table.header = {"x", "delta", "regime", "root_count", "roots"};
  for (const auto& row : rows) {
    Json j;
    j["x"] = row.x.str();
    j["delta"] = row.delta.str();
    j["regime"] = to_string(row.regime);
    j["roots"] = roots_json(row.roots);
    a.push_back(std::move(j));
    std::string roots;
    for (const auto& rr : row.roots) {
      if (!roots.empty()) roots += ";";
      roots += rr.enclosure.lo.str() + ":" + rr.enclosure.hi.str() + ":" + std::to_string(rr.multiplicity);
    }
    r.table.rows.push_back({row.x.str(), row.delta.str(), to_string(row.regime), std::to_string(row.roots.size()), roots});
  }
  r.json["rows"] = std::move(a);
  r.plots.emplace_back("tf_sweep.csv", r.table);
}

void cmd_tf_xs(const RunConfig& cfg, Report& r) {
  if (!cfg.tf.s) throw ConfigError("tf.s", "missing");
  const XsEnclosure e = tf_find_xs(*cfg.tf.s, cfg.width);
  r.json["enclosure"] = interval_json(e.enclosure);
  r.json["delta_lo"] = e.delta_lo.str();
  r.json["delta_hi"] = e.delta_hi.str();
  r.json["midpoint"] = approx(e.enclosure.midpoint().to_double());
  r.table = {{"s", "lo", "hi", "delta_lo", "delta_hi"},
             {{cfg.tf.s->str(), e.enclosure.lo.str(), e.enclosure.hi.str(), e.delta_lo.str(), e.delta_hi.str()}}};
}

std::optional<std::string> plot_dir(const RunConfig& cfg) {
  if (cfg.out_dir) return cfg.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return std::string(env);
  return std::nullopt;
}

void write_plots(const Report& r, const std::string& dir, std::ostream& err) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  for (const auto& [name, table] : r.plots) {
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("output_dir", "cannot write " + path.string());
    write_table(f, table);
    if (!f) throw ConfigError("output_dir", "write failed for " + path.string());
    err << "wrote " << path.string() << "\n";
  }
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& k : kCommands) {
    if (k.cmd == c) return k.name;
  }
  return "?";
}

const char* to_string(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Text: return "text";
  }
  return "?";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

RunConfig parse_config(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  apply_json(cfg, doc);
  return cfg;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Exact analysis of conical admissible Kähler classes"};
  std::string command;
  std::optional<std::string> config, x, s, kappa, z0, lo, hi, format, width, out_dir;
  std::optional<unsigned> points, order, panels, samples;
  std::optional<double> tol;
  std::optional<long long> seed;
  std::vector<std::string> factors;
  app.add_option("command", command, "classify | extremal-poly | threshold | split | delta | energy-demo | tf-sweep | tf-xs");
  app.add_option("--config", config, "JSON config file");
  app.add_option("--factor", factors, "base factor as d,s,x (repeatable)")->delimiter(';');
  app.add_option("--x", x, "TF class parameter x in (0,1)");
  app.add_option("--s", s, "TF normalized base scalar curvature");
  app.add_option("--kappa", kappa, "cone angle parameter (angle 2*pi*kappa)");
  app.add_option("--fixture-z0", z0, "use the double-root fixture centred at z0");
  app.add_option("--lo", lo, "sweep lower end");
  app.add_option("--hi", hi, "sweep upper end");
  app.add_option("--points", points, "sweep grid size");
  app.add_option("--format", format, "json | csv | text");
  app.add_option("--width", width, "root enclosure width");
  app.add_option("--order", order, "Gauss-Legendre nodes per panel");
  app.add_option("--panels", panels, "initial panel count");
  app.add_option("--tol", tol, "quadrature relative tolerance");
  app.add_option("--samples", samples, "F_omega plot grid size");
  app.add_option("--out-dir", out_dir, "directory for plot CSV files");
  app.add_option("--seed", seed, "recorded in the report; all computations are deterministic");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw ConfigError("help", app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError("argv", e.what());
  }

  RunConfig cfg;
  if (config) {
    std::ifstream f(*config);
    if (!f) throw ConfigError("--config", "cannot read " + *config);
    std::stringstream ss;
    ss << f.rdbuf();
    cfg = parse_config(ss.str());
  }
  if (!command.empty()) cfg.command = parse_command(command);
  if (!factors.empty()) {
    AdmissibleClass c;
    c.kappa = cfg.cls ? cfg.cls->kappa : Rat(1);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::string where = "--factor[" + std::to_string(i) + "]";
      std::vector<std::string> parts;
      std::stringstream ss(factors[i]);
      for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
      if (parts.size() != 3) throw ConfigError(where, "expected d,s,x");
      BaseFactor b;
      const Rat d = parse_rat(where + ".d", parts[0]);
      if (!d.is_integer() || d < Rat(1)) throw ConfigError(where + ".d", "must be an integer >= 1");
      b.d = static_cast<unsigned>(d.num().get_ui());
      b.s = parse_rat(where + ".s", parts[1]);
      b.x = parse_rat(where + ".x", parts[2]);
      c.factors.push_back(b);
    }
    cfg.cls = std::move(c);
  }
  if (x) cfg.tf.x = parse_rat("--x", *x);
  if (s) cfg.tf.s = parse_rat("--s", *s);
  if (kappa) {
    cfg.tf.kappa = parse_rat("--kappa", *kappa);
    if (cfg.cls) cfg.cls->kappa = cfg.tf.kappa;
  }
  if (cfg.cls) check_class(*cfg.cls, "class.");
  if (z0) cfg.fixture = DoubleRootFixture{parse_rat("--fixture-z0", *z0)};
  if (lo) cfg.sweep.lo = parse_rat("--lo", *lo);
  if (hi) cfg.sweep.hi = parse_rat("--hi", *hi);
  if (points) {
    if (*points < 1) throw ConfigError("--points", "must be >= 1");
    cfg.sweep.points = *points;
  }
  if (format) cfg.format = parse_format(*format);
  if (width) cfg.width = parse_rat("--width", *width);
  if (order) cfg.quadrature.order = *order;
  if (panels) {
    if (*panels < 1) throw ConfigError("--panels", "must be >= 1");
    cfg.quadrature.panels = *panels;
  }
  if (tol) cfg.quadrature.tolerance = *tol;
  if (samples) cfg.samples = *samples;
  if (out_dir) cfg.out_dir = *out_dir;
  if (seed) cfg.seed = *seed;
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!cfg.command) throw ConfigError("command", "missing");
    check_config(cfg);
    Report r;
    echo_input(r.json, cfg);
    switch (*cfg.command) {
      case Command::Classify: cmd_classify(cfg, r); break;
      case Command::ExtremalPoly: cmd_extremal_poly(cfg, r); break;
      case Command::Threshold: cmd_threshold(cfg, r); break;
      case Command::Split: cmd_split(cfg, r); break;
      case Command::Delta: cmd_delta(cfg, r); break;
      case Command::EnergyDemo: cmd_energy_demo(cfg, r); break;
      case Command::TfSweep: cmd_tf_sweep(cfg, r); break;
      case Command::TfXs: cmd_tf_xs(cfg, r); break;
    }
    if (const auto dir = plot_dir(cfg)) write_plots(r, *dir, err);
    switch (cfg.format) {
      case Format::Json: out << r.json.dump(2) << "\n"; break;
      case Format::Csv: write_table(out, r.table); break;
      case Format::Text: write_text(out, r.json, 0); break;
    }
    return kExitOk;
  } catch (const InvalidClass& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const ConfigError& e) {
    if (e.field() == "help") {
      out << e.what() + 6;  // drop the "help: " prefix
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const InvalidClass& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return run(cfg, out, err);
}

}  // namespace kc::cli
