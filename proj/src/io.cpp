#include "kahlercone/io.hpp"

namespace kc::io {

Json to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const Json& v, const std::string& field) {
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (!v.is_string()) throw InvalidClass(field, "expected a rational as a \"num/den\" string");
  const std::string text = v.get<std::string>();
  try {
    return Rat::parse(text);
  } catch (const std::exception&) {
    throw InvalidClass(field, "malformed rational '" + text + "' (expected \"num/den\" or an integer)");
  }
}

Json to_json(const RatPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.str());
  return a;
}

RatPoly poly_from_json(const Json& v, const std::string& field) {
  if (!v.is_array()) throw InvalidClass(field, "expected an array of coefficient strings");
  std::vector<Rat> c;
  c.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c.push_back(rat_from_json(v[i], field + "[" + std::to_string(i) + "]"));
  return RatPoly(std::move(c));
}

Json to_json(const AdmissibleClass& c) {
  Json f = Json::array();
  for (const auto& b : c.factors) {
    Json j;
    j["d"] = b.d;
    j["s"] = b.s.str();
    j["x"] = b.x.str();
    f.push_back(std::move(j));
  }
  Json j;
  j["factors"] = std::move(f);
  j["kappa"] = c.kappa.str();
  return j;
}

namespace {

unsigned dimension_from_json(const Json& v, const std::string& field) {
  const Rat d = rat_from_json(v, field);
  if (!d.is_integer() || d < Rat(1)) throw InvalidClass(field, "dimension must be an integer >= 1");
  return static_cast<unsigned>(d.num().get_ui());
}

}  // namespace

AdmissibleClass class_from_json(const Json& v, const std::string& prefix) {
  if (!v.is_object() || !v.contains("factors") || !v["factors"].is_array()) {
    throw InvalidClass(prefix + "factors", "expected an array of {d, s, x}");
  }
  AdmissibleClass c;
  const Json& fs = v["factors"];
  if (fs.empty()) throw InvalidClass(prefix + "factors", "at least one base factor is required");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string where = prefix + "factors[" + std::to_string(i) + "]";
    const Json& f = fs[i];
    if (!f.is_object()) throw InvalidClass(where, "expected an object {d, s, x}");
    for (const char* key : {"d", "s", "x"}) {
      if (!f.contains(key)) throw InvalidClass(where + "." + key, "missing");
    }
    c.factors.push_back({dimension_from_json(f["d"], where + ".d"), rat_from_json(f["s"], where + ".s"),
                         rat_from_json(f["x"], where + ".x")});
  }
  if (v.contains("kappa")) c.kappa = rat_from_json(v["kappa"], prefix + "kappa");
  try {
    c.validate();
  } catch (const InvalidClass& e) {
    const std::string what = e.what();
    throw InvalidClass(prefix + e.field(), what.substr(e.field().size() + 2));
  }
  return c;
}

}  // namespace kc::io
