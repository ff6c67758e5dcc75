#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "pbracket/classical.hpp"
#include "pbracket/element.hpp"
#include "pbracket/hybrid.hpp"
#include "pbracket/pmech.hpp"
#include "pbracket/weyl.hpp"

namespace pbracket {

using Json = nlohmann::json;

namespace detail {

inline Json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(z);
  return z.str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<std::int64_t>());
}

inline Json rational_json(const Rational& q) {
  return Json::array({integer_json(numerator(q)), integer_json(denominator(q))});
}

inline Rational rational_from_json(const Json& j) {
  return Rational(integer_from_json(j.at(0)), integer_from_json(j.at(1)));
}

/// {"re": [n, d], "im": [n, d]} plus the h-powers when present.
inline Json coeff_json(const Complex& c, int h1_pow, int h2_pow, bool with_h2 = true) {
  Json j{{"re", rational_json(c.re())}, {"im", rational_json(c.im())}, {"h1_pow", h1_pow}};
  if (with_h2) j["h2_pow"] = h2_pow;
  return j;
}

inline void add_coeff_from_json(Coefficient& out, const Json& j) {
  Complex c(rational_from_json(j.at("re")), rational_from_json(j.at("im")));
  out.add({j.value("h1_pow", 0), j.value("h2_pow", 0)}, c);
}

template <typename NameFn>
Json exponents_json(const Monomial& m, NameFn name) {
  Json e = Json::object();
  for (std::size_t v = 0; v < m.size(); ++v)
    if (m[v] != 0) e[name(v)] = m[v];
  return e;
}

template <typename NameFn>
Monomial exponents_from_json(const Json& j, std::size_t width, NameFn name) {
  Monomial m(width);
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (std::size_t v = 0; v < width; ++v) {
      if (name(v) == key) {
        m[v] = value.template get<std::uint32_t>();
        found = true;
        break;
      }
    }
    if (!found) throw Error("unknown exponent name '" + key + "'");
  }
  return m;
}

}  // namespace detail

inline Json to_json(const ConventionTuple& t) {
  return {{"eps_comm", to_string(t.eps_comm)}, {"kappa_x", to_string(t.kappa_x)},
          {"kappa_y", to_string(t.kappa_y)},   {"kappa_s", to_string(t.kappa_s)},
          {"orient", t.orient},                {"rep_s_sign", t.rep_s_sign},
          {"qp_order", to_string(t.qp_order)}};
}

inline ConventionTuple convention_from_json(const Json& j) {
  ConventionTuple t;
  t.eps_comm = unit_from_string(j.at("eps_comm").get<std::string>());
  t.kappa_x = unit_from_string(j.at("kappa_x").get<std::string>());
  t.kappa_y = unit_from_string(j.at("kappa_y").get<std::string>());
  t.kappa_s = unit_from_string(j.at("kappa_s").get<std::string>());
  t.orient = j.at("orient").get<int>();
  t.rep_s_sign = j.at("rep_s_sign").get<int>();
  if (std::abs(t.orient) != 1 || std::abs(t.rep_s_sign) != 1) throw Error("orient and rep_s_sign must be +1 or -1");
  t.qp_order = product_order_from_string(j.value("qp_order", std::string("PQ")));
  return t;
}

inline Json to_json(const GroupSignature& sig) {
  return {{"dof_per_sector", sig.dof()}, {"convention", to_json(sig.convention())}};
}

inline GroupSignature signature_from_json(const Json& j) {
  return GroupSignature(j.at("dof_per_sector").get<int>(), convention_from_json(j.at("convention")));
}

inline Json to_json(const Element& e) {
  const auto& sig = e.signature();
  Json terms = Json::array();
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    for (const auto& [p, c] : it->second.terms()) {
      terms.push_back({{"coeff", detail::coeff_json(c, p.h1, p.h2)},
                       {"exponents", detail::exponents_json(it->first, [&](std::size_t g) {
                          return sig.generator_name(g);
                        })}});
    }
  }
  return {{"signature", to_json(sig)}, {"terms", terms}};
}

inline Element element_from_json(const Json& j) {
  GroupSignature sig = signature_from_json(j.at("signature"));
  Element e(sig);
  for (const auto& t : j.at("terms")) {
    Coefficient c;
    detail::add_coeff_from_json(c, t.at("coeff"));
    e.add_term(detail::exponents_from_json(t.at("exponents"), sig.generator_count(),
                                           [&](std::size_t g) { return sig.generator_name(g); }),
               c);
  }
  return e;
}

inline Json to_json(const AObservable& k) {
  return {{"plain", to_json(k.plain())}, {"a1", to_json(k.a1())}, {"a2", to_json(k.a2())}};
}

inline AObservable aobservable_from_json(const Json& j) {
  return AObservable(element_from_json(j.at("plain")), element_from_json(j.at("a1")), element_from_json(j.at("a2")));
}

inline Json to_json(const WeylOperator& w) {
  Json terms = Json::array();
  for (auto it = w.terms().rbegin(); it != w.terms().rend(); ++it) {
    for (const auto& [p, c] : it->second.terms()) {
      terms.push_back({{"coeff", detail::coeff_json(c, p.h1, p.h2)},
                       {"exponents", detail::exponents_json(it->first, [&](std::size_t v) {
                          return w.variable_name(v);
                        })}});
    }
  }
  return {{"signature", to_json(w.signature())}, {"terms", terms}};
}

inline WeylOperator weyl_from_json(const Json& j) {
  GroupSignature sig = signature_from_json(j.at("signature"));
  WeylOperator w(sig);
  for (const auto& t : j.at("terms")) {
    Coefficient c;
    detail::add_coeff_from_json(c, t.at("coeff"));
    w.add_term(detail::exponents_from_json(t.at("exponents"), w.variable_count(),
                                           [&](std::size_t v) { return w.variable_name(v); }),
               c);
  }
  return w;
}

/// One JSON term per (monomial, h-power) pair; the h2 power becomes "h2_deg".
inline Json to_json(const HybridObservable& h) {
  Json terms = Json::array();
  auto name = [&](std::size_t v) { return h.variable_name(v); };
  for (auto it = h.terms().rbegin(); it != h.terms().rend(); ++it) {
    Monomial quantum(h.variable_count());
    Monomial classical(h.variable_count());
    for (std::size_t v = 0; v < h.variable_count(); ++v) (v < h.half() ? quantum : classical)[v] = it->first[v];
    for (const auto& [p, c] : it->second.terms()) {
      terms.push_back({{"weyl", {{"exponents", detail::exponents_json(quantum, name)}}},
                       {"classical",
                        {{"coeffs", detail::coeff_json(c, p.h1, 0, false)},
                         {"exponents", detail::exponents_json(classical, name)},
                         {"h2_deg", p.h2}}}});
    }
  }
  return {{"signature", to_json(h.signature())}, {"terms", terms}};
}

inline HybridObservable hybrid_from_json(const Json& j) {
  GroupSignature sig = signature_from_json(j.at("signature"));
  HybridObservable h(sig);
  auto name = [&](std::size_t v) { return h.variable_name(v); };
  for (const auto& t : j.at("terms")) {
    Monomial m = detail::exponents_from_json(t.at("weyl").at("exponents"), h.variable_count(), name);
    const Json& cl = t.at("classical");
    Monomial c = detail::exponents_from_json(cl.at("exponents"), h.variable_count(), name);
    for (std::size_t v = 0; v < m.size(); ++v) m[v] += c[v];
    Json coeff = cl.at("coeffs");
    coeff["h2_pow"] = cl.value("h2_deg", 0);
    Coefficient k;
    detail::add_coeff_from_json(k, coeff);
    h.add_term(m, k);
  }
  return h;
}

inline Json to_json(const ClassicalPoly& f) {
  Json terms = Json::array();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    terms.push_back({{"coeff", {{"re", detail::rational_json(it->second.re())}, {"im", detail::rational_json(it->second.im())}}},
                     {"exponents", detail::exponents_json(it->first, [&](std::size_t v) { return f.variable_name(v); })}});
  }
  return {{"dof_per_sector", f.dof()}, {"terms", terms}};
}

/// Persisted settings: the calibrated convention and the default signature.
struct Config {
  ConventionTuple convention{};
  int dof_per_sector = 1;
};

inline Json to_json(const Config& c) {
  return {{"convention", to_json(c.convention)}, {"signature", {{"dof_per_sector", c.dof_per_sector}}}};
}

inline Config config_from_json(const Json& j) {
  Config c;
  if (j.contains("convention")) c.convention = convention_from_json(j.at("convention"));
  if (j.contains("signature")) c.dof_per_sector = j.at("signature").value("dof_per_sector", 1);
  if (c.dof_per_sector < 1) throw InvalidSignature("dof_per_sector must be positive");
  return c;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  try {
    Json j;
    in >> j;
    return config_from_json(j);
  } catch (const Json::exception& e) {
    throw Error("config '" + path + "' is malformed: " + e.what());
  }
}

inline void save_config(const Config& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write config '" + path + "'");
  out << to_json(c).dump(2) << "\n";
}

}  // namespace pbracket
