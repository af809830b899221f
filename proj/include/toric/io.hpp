#ifndef TORIC_IO_HPP
#define TORIC_IO_HPP

// JSON documents tagged by "kind": fan, polytope, divisor, polynomial, system.
// Integers are JSON numbers or decimal strings; rationals may also be "p/q".

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "toric/bernstein.hpp"
#include "toric/cones_fans.hpp"
#include "toric/polytopes.hpp"
#include "toric/tdivisor.hpp"

namespace toric::io {

using nlohmann::json;

// Validation failure tied to a source location.
class InputError : public ValidationError {
 public:
  InputError(const std::string& source, std::size_t line, const std::string& what)
      : ValidationError(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Document {
  std::string source;  // file name, or "<inline>"
  std::string text;
  json value;
};

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Line where element `index` of the array stored under `key` starts; 0 when
// it cannot be located. Strings are skipped when matching brackets.
inline std::size_t element_line(const std::string& text, const std::string& key, std::size_t index) {
  std::string needle = "\"" + key + "\"";
  std::size_t pos = text.find(needle);
  if (pos == std::string::npos) return 0;
  pos = text.find('[', pos + needle.size());
  if (pos == std::string::npos) return 0;
  int depth = 0;
  std::size_t seen = 0;
  bool expecting = true;
  for (std::size_t i = pos + 1; i < text.size(); ++i) {
    char c = text[i];
    if (c == '"') {
      if (depth == 0 && expecting) {
        if (seen == index) return line_of_offset(text, i);
        ++seen;
        expecting = false;
      }
      for (++i; i < text.size() && text[i] != '"'; ++i)
        if (text[i] == '\\') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (depth == 0) {
      if (c == ']') return 0;
      if (c == ',') {
        expecting = true;
        continue;
      }
      if (expecting) {
        if (seen == index) return line_of_offset(text, i);
        ++seen;
        expecting = false;
      }
    }
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
  }
  return 0;
}

inline Document parse_text(std::string text, std::string source = "<inline>") {
  Document d{std::move(source), std::move(text), {}};
  try {
    d.value = json::parse(d.text);
  } catch (const json::parse_error& e) {
    throw InputError(d.source, line_of_offset(d.text, e.byte ? e.byte - 1 : 0),
                     std::string("parse error: ") + e.what());
  }
  return d;
}

inline Document load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path.string());
}

// ---- scalars ----

inline Int parse_int(const json& v) {
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_number_unsigned()) return Int(v.get<unsigned long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw ValidationError("expected an integer, got \"" + s + "\"");
    return Int(s[0] == '+' ? s.substr(1) : s);
  }
  throw ValidationError("expected an integer");
}

inline Rat parse_rat(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(v));
    Int p = parse_int(json(s.substr(0, slash)));
    Int q = parse_int(json(s.substr(slash + 1)));
    if (q == 0) throw ValidationError("zero denominator in \"" + s + "\"");
    if (q < 0) return Rat(-p, -q);
    return Rat(p, q);
  }
  return Rat(parse_int(v));
}

inline json int_to_json(const Int& v) {
  static const Int limit = Int(1) << 53;
  if (abs(v) < limit) return json(static_cast<long long>(v));
  return json(v.str());
}

inline json rat_to_json(const Rat& r) {
  if (boost::multiprecision::denominator(r) == 1) return int_to_json(boost::multiprecision::numerator(r));
  return json(boost::multiprecision::numerator(r).str() + "/" +
              boost::multiprecision::denominator(r).str());
}

inline std::string rat_to_string(const Rat& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

template <class Tag>
json vector_to_json(const LatticePoint<Tag>& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(int_to_json(v[i]));
  return a;
}

// ---- structured values ----

namespace detail {

inline void require_kind(const Document& d, const std::string& kind) {
  if (!d.value.is_object()) throw InputError(d.source, 1, "expected a JSON object");
  auto it = d.value.find("kind");
  if (it == d.value.end() || !it->is_string())
    throw InputError(d.source, 1, "missing \"kind\" field");
  if (it->get<std::string>() != kind)
    throw InputError(d.source, 1, "expected kind \"" + kind + "\", got \"" + it->get<std::string>() + "\"");
}

inline const json& field(const Document& d, const std::string& key) {
  auto it = d.value.find(key);
  if (it == d.value.end()) throw InputError(d.source, 1, "missing \"" + key + "\" field");
  return *it;
}

inline std::vector<Int> int_array(const Document& d, const json& a, const std::string& key,
                                  std::size_t index, std::optional<std::size_t> len = {}) {
  if (!a.is_array()) throw InputError(d.source, element_line(d.text, key, index), key + "[" + std::to_string(index) + "]: expected an array");
  std::vector<Int> out;
  try {
    for (const auto& x : a) out.push_back(parse_int(x));
  } catch (const ValidationError& e) {
    throw InputError(d.source, element_line(d.text, key, index), key + "[" + std::to_string(index) + "]: " + e.what());
  }
  if (len && out.size() != *len)
    throw InputError(d.source, element_line(d.text, key, index),
                     key + "[" + std::to_string(index) + "]: expected " + std::to_string(*len) + " entries");
  return out;
}

inline std::size_t dimension(const Document& d) {
  const json& v = field(d, "dim");
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(d.source, 1, "\"dim\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace detail

inline Fan fan_from(const Document& d) {
  detail::require_kind(d, "fan");
  const std::size_t dim = detail::dimension(d);
  const json& jr = detail::field(d, "rays");
  const json& jc = detail::field(d, "cones");
  if (!jr.is_array() || !jc.is_array()) throw InputError(d.source, 1, "\"rays\" and \"cones\" must be arrays");
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < jr.size(); ++i) rays.emplace_back(detail::int_array(d, jr[i], "rays", i, dim));
  std::vector<RayIndices> cones;
  for (std::size_t i = 0; i < jc.size(); ++i) {
    RayIndices c;
    for (const auto& x : detail::int_array(d, jc[i], "cones", i)) {
      if (x < 0) throw InputError(d.source, element_line(d.text, "cones", i), "cones[" + std::to_string(i) + "]: negative ray index");
      c.push_back(static_cast<std::size_t>(x));
    }
    cones.push_back(std::move(c));
  }
  try {
    return Fan(dim, std::move(rays), std::move(cones));
  } catch (const FanError& e) {
    bool ray_error = e.kind() == FanErrorKind::ZeroRay || e.kind() == FanErrorKind::NonPrimitiveRay ||
                     e.kind() == FanErrorKind::DuplicateRay || e.kind() == FanErrorKind::DimensionMismatch;
    throw InputError(d.source, element_line(d.text, ray_error ? "rays" : "cones", e.index()), e.what());
  }
}

inline json to_json(const Fan& f) {
  json rays = json::array();
  for (const auto& r : f.rays()) rays.push_back(vector_to_json(r));
  json cones = json::array();
  for (const auto& c : f.maximal_cones()) cones.push_back(c);
  return {{"kind", "fan"}, {"dim", f.dim()}, {"rays", rays}, {"cones", cones}};
}

inline LatticePolytope polytope_from(const Document& d) {
  detail::require_kind(d, "polytope");
  const std::size_t dim = detail::dimension(d);
  const json& jv = detail::field(d, "vertices");
  if (!jv.is_array() || jv.empty()) throw InputError(d.source, 1, "\"vertices\" must be a nonempty array");
  std::vector<DualVector> pts;
  for (std::size_t i = 0; i < jv.size(); ++i) pts.emplace_back(detail::int_array(d, jv[i], "vertices", i, dim));
  return LatticePolytope(std::move(pts));
}

inline json to_json(const LatticePolytope& k) {
  json vs = json::array();
  for (const auto& v : k.vertices()) vs.push_back(vector_to_json(v));
  return {{"kind", "polytope"}, {"dim", k.dim()}, {"vertices", vs}};
}

// The "fan" field is either an embedded fan document or a path, resolved
// relative to the divisor file.
inline TDivisor divisor_from(const Document& d, std::shared_ptr<const Fan> fan = nullptr) {
  detail::require_kind(d, "divisor");
  if (!fan) {
    const json& jf = detail::field(d, "fan");
    if (jf.is_string()) {
      std::filesystem::path p = jf.get<std::string>();
      if (p.is_relative() && d.source != "<inline>") p = std::filesystem::path(d.source).parent_path() / p;
      fan = std::make_shared<const Fan>(fan_from(load(p)));
    } else {
      fan = std::make_shared<const Fan>(fan_from(Document{d.source, d.text, jf}));
    }
  }
  const json& jc = detail::field(d, "coefficients");
  std::vector<Int> a;
  try {
    for (const auto& x : jc) a.push_back(parse_int(x));
  } catch (const ValidationError& e) {
    throw InputError(d.source, 1, std::string("coefficients: ") + e.what());
  }
  if (a.size() != fan->rays().size())
    throw InputError(d.source, 1, "expected " + std::to_string(fan->rays().size()) +
                                      " coefficients (one per ray), got " + std::to_string(a.size()));
  return TDivisor(std::move(fan), std::move(a));
}

inline json to_json(const TDivisor& dv, std::optional<std::string> fan_path = {}) {
  json a = json::array();
  for (const auto& x : dv.coefficients()) a.push_back(int_to_json(x));
  json out = {{"kind", "divisor"}, {"coefficients", a}};
  out["fan"] = fan_path ? json(*fan_path) : to_json(dv.fan());
  return out;
}

namespace detail {

inline LaurentPolynomial polynomial_from_terms(const Document& d, const json& terms, std::size_t dim,
                                               const std::string& key, std::size_t index) {
  if (!terms.is_array()) throw InputError(d.source, element_line(d.text, key, index), "expected an array of terms");
  LaurentPolynomial p(dim);
  for (const auto& t : terms) {
    try {
      if (!t.is_object() || !t.contains("exponent") || !t.contains("coefficient"))
        throw ValidationError("each term needs \"exponent\" and \"coefficient\"");
      std::vector<Int> e;
      for (const auto& x : t.at("exponent")) e.push_back(parse_int(x));
      if (e.size() != dim) throw ValidationError("exponent length differs from dim");
      p.add_term(DualVector(std::move(e)), parse_rat(t.at("coefficient")));
    } catch (const InputError&) {
      throw;
    } catch (const ValidationError& e) {
      throw InputError(d.source, element_line(d.text, key, index), key + "[" + std::to_string(index) + "]: " + e.what());
    }
  }
  return p;
}

}  // namespace detail

inline LaurentPolynomial polynomial_from(const Document& d) {
  detail::require_kind(d, "polynomial");
  const std::size_t dim = detail::dimension(d);
  return detail::polynomial_from_terms(d, detail::field(d, "terms"), dim, "terms", 0);
}

inline json to_json(const LaurentPolynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back({{"exponent", vector_to_json(m)}, {"coefficient", rat_to_json(c)}});
  return {{"kind", "polynomial"}, {"dim", p.dim()}, {"terms", terms}};
}

struct System {
  std::vector<LaurentPolynomial> polynomials;
  std::vector<BKRoot> roots;
};

inline System system_from(const Document& d) {
  detail::require_kind(d, "system");
  const std::size_t dim = detail::dimension(d);
  const json& jp = detail::field(d, "polynomials");
  if (!jp.is_array()) throw InputError(d.source, 1, "\"polynomials\" must be an array");
  System s;
  for (std::size_t i = 0; i < jp.size(); ++i)
    s.polynomials.push_back(detail::polynomial_from_terms(d, jp[i], dim, "polynomials", i));
  auto jr = d.value.find("roots");
  if (jr != d.value.end()) {
    if (!jr->is_array()) throw InputError(d.source, 1, "\"roots\" must be an array");
    for (std::size_t i = 0; i < jr->size(); ++i) {
      const json& r = (*jr)[i];
      std::size_t line = element_line(d.text, "roots", i);
      try {
        BKRoot root;
        if (!r.is_object() || !r.contains("point")) throw ValidationError("each root needs a \"point\"");
        for (const auto& x : r.at("point")) root.point.push_back(parse_rat(x));
        if (root.point.size() != dim) throw ValidationError("point length differs from dim");
        if (r.contains("multiplicity")) root.multiplicity = parse_int(r.at("multiplicity"));
        s.roots.push_back(std::move(root));
      } catch (const ValidationError& e) {
        throw InputError(d.source, line, "roots[" + std::to_string(i) + "]: " + e.what());
      }
    }
  }
  return s;
}

// Comma-separated rationals, e.g. "2,1/3,-5".
inline std::vector<Rat> parse_point(const std::string& text) {
  std::vector<Rat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(json(item)));
  if (out.empty()) throw ValidationError("empty point");
  return out;
}

}  // namespace toric::io

#endif  // TORIC_IO_HPP
