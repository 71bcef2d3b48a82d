#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "firlab/presentation.hpp"
#include "firlab/suite.hpp"
#include "firlab/trivialize.hpp"

namespace firlab {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Ambients by name

/// Interned free algebra on the given letters.
inline const FreeAlgebra& free_algebra(const std::string& letters) {
  static std::map<std::string, std::unique_ptr<FreeAlgebra>> table;
  auto& slot = table[letters];
  if (!slot) slot = std::make_unique<FreeAlgebra>(letters);
  return *slot;
}

using AnyAmbient = std::variant<const FreeAlgebra*, const ZRing*, const LimitRing*>;

/// "free:<letters>", "poly:z", "laurent:z", or a limit monoid name.
inline AnyAmbient ambient_by_name(const std::string& name) {
  if (name.rfind("free:", 0) == 0) {
    const std::string letters = name.substr(5);
    if (letters.empty()) throw UnknownName("free algebra needs letters: " + name);
    return &free_algebra(letters);
  }
  if (name == "poly:z") return &z_polynomials();
  if (name == "laurent:z") return &z_laurent();
  return &limit_ring(name);
}

// ---------------------------------------------------------------------------
// Polynomials and relations

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::vector<std::string> token_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": expected a token array");
  std::vector<std::string> out;
  for (const auto& t : j) {
    if (!t.is_string()) throw Error(where + ": tokens must be strings");
    out.push_back(t.get<std::string>());
  }
  return out;
}

}  // namespace detail

/// [[coefficient, [tokens...]], ...], highest term first.
template <RingAmbient A, Field F>
json poly_to_json(const RingElt<A, F>& r) {
  json out = json::array();
  for (auto it = r.terms().rbegin(); it != r.terms().rend(); ++it) {
    out.push_back(json::array({coeff_string(it->second), r.ambient().tokens(it->first)}));
  }
  return out;
}

template <RingAmbient A, Field F = Rational>
RingElt<A, F> poly_from_json(const A& amb, const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": expected a list of terms");
  RingElt<A, F> out(amb);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const json& t = j[k];
    if (!t.is_array() || t.size() != 2 || !t[0].is_string()) {
      throw Error(at + ": a term is [\"coefficient\", [tokens]]");
    }
    F c;
    try {
      c = parse_coeff(t[0].get<std::string>(), static_cast<const F*>(nullptr));
    } catch (const std::exception&) {
      throw Error(at + ": bad coefficient '" + t[0].get<std::string>() + "'");
    }
    try {
      out.add_term(amb.from_tokens(detail::token_array(t[1], at)), c);
    } catch (const Error& e) {
      throw Error(at + ": " + e.what());
    }
  }
  return out;
}

template <RingAmbient A, Field F>
json relation_to_json(const Relation<A, F>& rel) {
  json u = json::array(), v = json::array();
  for (std::size_t i = 0; i < rel.size(); ++i) {
    u.push_back(poly_to_json(rel.u[i]));
    v.push_back(poly_to_json(rel.v[i]));
  }
  return {{"ambient", rel.ambient().name()}, {"u", u}, {"v", v}};
}

/// Checks the sum; the ambient field is not consulted.
template <RingAmbient A, Field F = Rational>
Relation<A, F> relation_from_json(const A& amb, const json& j, const std::string& where = "relation") {
  const json& u = detail::field(j, "u", where);
  const json& v = detail::field(j, "v", where);
  if (!u.is_array() || !v.is_array()) throw Error(where + ": u and v must be lists");
  std::vector<RingElt<A, F>> us, vs;
  for (std::size_t i = 0; i < u.size(); ++i) us.push_back(poly_from_json<A, F>(amb, u[i], where + ".u[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < v.size(); ++i) vs.push_back(poly_from_json<A, F>(amb, v[i], where + ".v[" + std::to_string(i) + "]"));
  return make_relation<A, F>(std::move(us), std::move(vs));
}

inline std::string ambient_of(const json& j, const std::string& where = "relation") {
  const json& a = detail::field(j, "ambient", where);
  if (!a.is_string()) throw Error(where + ": ambient must be a string");
  return a.get<std::string>();
}

// ---------------------------------------------------------------------------
// Certificates: op lists with 1-based indices

template <RingAmbient A, Field F>
json op_to_json(const ElementaryOp<A, F>& op) {
  switch (op.kind) {
    case OpKind::Swap: return {{"op", "swap"}, {"i", op.i + 1}, {"j", op.j + 1}};
    case OpKind::AddRightMultiple: return {{"op", "add"}, {"i", op.i + 1}, {"j", op.j + 1}, {"r", poly_to_json(op.r)}};
    case OpKind::ScaleUnit:
      return {{"op", "scale"}, {"i", op.i + 1}, {"r", poly_to_json(op.r)}, {"r_inv", poly_to_json(op.r_inv)}};
  }
  return {};
}

template <RingAmbient A, Field F = Rational>
ElementaryOp<A, F> op_from_json(const A& amb, const json& j, const std::string& where) {
  using Op = ElementaryOp<A, F>;
  auto index = [&](const char* key) -> std::size_t {
    const json& x = detail::field(j, key, where);
    if (!x.is_number_integer() || x.get<long>() < 1) throw Error(where + ": '" + key + "' must be a positive index");
    return static_cast<std::size_t>(x.get<long>() - 1);
  };
  const json& kind = detail::field(j, "op", where);
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "swap") return Op::swap(index("i"), index("j"));
  if (k == "add") return Op::add(index("i"), index("j"), poly_from_json<A, F>(amb, detail::field(j, "r", where), where + ".r"));
  if (k == "scale") {
    return Op::scale(index("i"), poly_from_json<A, F>(amb, detail::field(j, "r", where), where + ".r"),
                     poly_from_json<A, F>(amb, detail::field(j, "r_inv", where), where + ".r_inv"));
  }
  throw Error(where + ": unknown op '" + k + "'");
}

template <RingAmbient A, Field F>
json certificate_to_json(const Certificate<A, F>& cert) {
  json ops = json::array();
  for (const auto& op : cert.ops) ops.push_back(op_to_json(op));
  return {{"ambient", cert.final_relation.ambient().name()}, {"ops", ops}, {"final", relation_to_json(cert.final_relation)}};
}

/// The final relation is taken as given: verify_certificate compares it.
template <RingAmbient A, Field F = Rational>
Certificate<A, F> certificate_from_json(const A& amb, const json& j, const std::string& where = "certificate") {
  const json& ops = detail::field(j, "ops", where);
  if (!ops.is_array()) throw Error(where + ": ops must be a list");
  Certificate<A, F> cert;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    cert.ops.push_back(op_from_json<A, F>(amb, ops[k], where + ".ops[" + std::to_string(k) + "]"));
  }
  const json& fin = detail::field(j, "final", where);
  const std::string w = where + ".final";
  const json& u = detail::field(fin, "u", w);
  const json& v = detail::field(fin, "v", w);
  if (!u.is_array() || !v.is_array() || u.size() != v.size()) throw Error(w + ": u and v must be lists of equal length");
  for (std::size_t i = 0; i < u.size(); ++i) {
    cert.final_relation.u.push_back(poly_from_json<A, F>(amb, u[i], w + ".u[" + std::to_string(i) + "]"));
    cert.final_relation.v.push_back(poly_from_json<A, F>(amb, v[i], w + ".v[" + std::to_string(i) + "]"));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Presentations: {name?, alphabet, rules: [[lhs], [rhs]], images?, weights?}

inline Presentation presentation_from_json(const json& j, const std::string& where = "presentation") {
  auto join = [](const std::vector<std::string>& ts) {
    std::string s;
    for (const auto& t : ts) s += (s.empty() ? "" : " ") + t;
    return s;
  };
  const std::vector<std::string> alphabet = detail::token_array(detail::field(j, "alphabet", where), where + ".alphabet");
  std::vector<std::pair<std::string, std::string>> rules;
  const json& rs = detail::field(j, "rules", where);
  if (!rs.is_array()) throw Error(where + ".rules: expected a list");
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const std::string at = where + ".rules[" + std::to_string(k) + "]";
    if (!rs[k].is_array() || rs[k].size() != 2) throw Error(at + ": a rule is [[lhs tokens], [rhs tokens]]");
    rules.emplace_back(join(detail::token_array(rs[k][0], at)), join(detail::token_array(rs[k][1], at)));
  }
  std::optional<std::vector<std::string>> images;
  if (j.contains("images")) {
    images.emplace();
    const json& is = j.at("images");
    if (!is.is_array()) throw Error(where + ".images: expected a list");
    for (std::size_t k = 0; k < is.size(); ++k) {
      images->push_back(join(detail::token_array(is[k], where + ".images[" + std::to_string(k) + "]")));
    }
  }
  std::vector<int> weights;
  if (j.contains("weights")) weights = j.at("weights").get<std::vector<int>>();
  const std::string name = j.contains("name") ? j.at("name").get<std::string>() : "custom";
  return detail::make_presentation(name, alphabet, rules, images, weights);
}

// ---------------------------------------------------------------------------
// Suite reports

inline json suite_report_to_json(const SuiteReport& rep, const SuiteOptions& opt) {
  json conds = json::array();
  for (const auto& c : rep.conditions) {
    conds.push_back({{"key", c.key},
                     {"outcome", to_string(c.outcome)},
                     {"cases", c.cases},
                     {"failures", c.failures},
                     {"unknowns", c.unknowns},
                     {"witness", c.witness ? json(*c.witness) : json(nullptr)},
                     {"unknown_case", c.unknown_case ? json(*c.unknown_case) : json(nullptr)},
                     {"bound", c.bound},
                     {"seconds", c.seconds}});
  }
  return {{"target", rep.target},
          {"sample_size", rep.sample_size},
          {"bound", opt.bound},
          {"max_n", opt.max_n},
          {"conditions", conds}};
}

}  // namespace firlab
