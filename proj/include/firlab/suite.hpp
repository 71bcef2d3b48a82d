#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "firlab/conditions.hpp"
#include "firlab/monoids.hpp"

namespace firlab {

struct SuiteOptions {
  std::size_t bound = 32;
  long max_n = 8;
};

/// Aggregate verdict of one condition over every relation found in a sample.
struct ConditionReport {
  std::string key;
  Outcome outcome = Outcome::Pass;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t unknowns = 0;
  std::optional<std::string> witness;       // first failing case
  std::optional<std::string> unknown_case;  // first undecided case
  std::size_t bound = 0;
  double seconds = 0;

  void record(Outcome o, const std::function<std::string()>& describe) {
    ++cases;
    if (o == Outcome::Fail) {
      if (failures++ == 0) witness = describe();
    } else if (o == Outcome::Unknown) {
      if (unknowns++ == 0) unknown_case = describe();
    }
  }

  void finish() {
    outcome = failures ? Outcome::Fail : unknowns ? Outcome::Unknown : Outcome::Pass;
  }
};

struct SuiteReport {
  std::string target;
  std::size_t sample_size = 0;
  std::vector<ConditionReport> conditions;

  const ConditionReport* find(std::string_view key) const {
    for (const auto& c : conditions) {
      if (c.key == key) return &c;
    }
    return nullptr;
  }
};

inline const std::vector<std::string>& condition_keys() {
  static const std::vector<std::string> keys{"cancellative",
                                             "overlap",
                                             "internal identity",
                                             "conjugation",
                                             "power divisibility left",
                                             "power divisibility right",
                                             "skew",
                                             "abg"};
  return keys;
}

namespace detail {

template <ComputableMonoid M, class K>
class Sweeper {
 public:
  using E = typename M::Element;

  Sweeper(const M& m, const std::vector<E>& sample, SuiteOptions opt, std::function<K(const E&)> key,
          std::function<K(const K&, const K&)> kmul)
      : m_(m), xs_(sample), opt_(opt), kmul_(std::move(kmul)) {
    for (const E& x : xs_) keys_.push_back(key(x));
  }

  SuiteReport run() {
    SuiteReport out{m_.name(), xs_.size(), {}};
    out.conditions.push_back(timed("cancellative", [&](ConditionReport& r) { cancellative(r); }));
    out.conditions.push_back(timed("overlap", [&](ConditionReport& r) { overlap(r); }));
    out.conditions.push_back(timed("internal identity", [&](ConditionReport& r) { internal_identity(r); }));
    ConditionReport conj{"conjugation"}, left{"power divisibility left"}, right{"power divisibility right"};
    const auto t0 = std::chrono::steady_clock::now();
    conjugations(conj, left, right);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (ConditionReport* r : {&conj, &left, &right}) {
      r->bound = opt_.bound;
      r->seconds = dt;
      r->finish();
      out.conditions.push_back(*r);
    }
    out.conditions.push_back(timed("skew", [&](ConditionReport& r) { skew(r); }));
    out.conditions.push_back(timed("abg", [&](ConditionReport& r) { abg(r); }));
    return out;
  }

 private:
  template <class F>
  ConditionReport timed(const std::string& key, F body) {
    ConditionReport r{key};
    r.bound = opt_.bound;
    const auto t0 = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.finish();
    return r;
  }

  std::string show(std::initializer_list<std::pair<const char*, const E*>> parts, const std::string& tail = "") const {
    std::string s;
    for (const auto& [name, e] : parts) {
      if (!s.empty()) s += ", ";
      s += std::string(name) + "=" + m_.show(*e);
    }
    return tail.empty() ? s : s + "; " + tail;
  }

  std::size_t n() const { return xs_.size(); }

  void cancellative(ConditionReport& r) {
    for (std::size_t i = 0; i < n(); ++i) {
      for (int side = 0; side < 2; ++side) {
        std::map<K, std::size_t> seen;
        bool clean = true;
        for (std::size_t j = 0; j < n(); ++j) {
          const K k = side == 0 ? kmul_(keys_[i], keys_[j]) : kmul_(keys_[j], keys_[i]);
          const auto [it, fresh] = seen.emplace(k, j);
          if (fresh) continue;
          clean = false;
          const E &a = xs_[i], &b = xs_[it->second], &c = xs_[j];
          r.record(check_cancellative(m_, a, b, c), [&] { return show({{"a", &a}, {"b", &b}, {"c", &c}}); });
        }
        if (clean) r.record(Outcome::Pass, [] { return std::string(); });
      }
    }
  }

  void overlap(ConditionReport& r) {
    std::map<K, std::vector<std::pair<std::size_t, std::size_t>>> buckets;
    for (std::size_t i = 0; i < n(); ++i) {
      for (std::size_t j = 0; j < n(); ++j) buckets[kmul_(keys_[i], keys_[j])].push_back({i, j});
    }
    for (const auto& [k, pairs] : buckets) {
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        for (std::size_t q = p + 1; q < pairs.size(); ++q) {
          const E &a = xs_[pairs[p].first], &c = xs_[pairs[p].second];
          const E &b = xs_[pairs[q].first], &d = xs_[pairs[q].second];
          if (m_.eq(a, b)) continue;
          const auto ref = refine_overlap(m_, a, b, c, d, opt_.bound);
          const Outcome o = ref.kind == RefinementKind::NoRefinement ? Outcome::Fail
                            : ref.kind == RefinementKind::Unknown    ? Outcome::Unknown
                                                                     : Outcome::Pass;
          r.record(o, [&] { return show({{"a", &a}, {"c", &c}, {"b", &b}, {"d", &d}}, to_string(ref.kind)); });
        }
      }
    }
  }

  void internal_identity(ConditionReport& r) {
    for (std::size_t i = 0; i < n(); ++i) {
      if (m_.is_invertible(xs_[i])) continue;
      std::vector<K> ad;
      for (std::size_t l = 0; l < n(); ++l) ad.push_back(kmul_(keys_[i], keys_[l]));
      for (std::size_t j = 0; j < n(); ++j) {
        for (std::size_t l = 0; l < n(); ++l) {
          if (!(kmul_(keys_[j], ad[l]) == keys_[i])) continue;
          const E &a = xs_[i], &c = xs_[j], &d = xs_[l];
          const auto v = check_internal_identity(m_, a, c, d);
          r.record(v.outcome, [&] { return show({{"a", &a}, {"c", &c}, {"d", &d}}); });
        }
      }
    }
  }

  void conjugations(ConditionReport& conj, ConditionReport& left, ConditionReport& right) {
    for (std::size_t i = 0; i < n(); ++i) {
      std::map<K, std::vector<std::size_t>> ca;
      for (std::size_t j = 0; j < n(); ++j) ca[kmul_(keys_[j], keys_[i])].push_back(j);
      for (std::size_t j = 0; j < n(); ++j) {
        const auto it = ca.find(kmul_(keys_[i], keys_[j]));
        if (it == ca.end()) continue;
        for (std::size_t l : it->second) {
          const E &a = xs_[i], &b = xs_[j], &c = xs_[l];
          auto describe = [&] { return show({{"a", &a}, {"b", &b}, {"c", &c}}); };
          if (!(is_one(m_, b) && is_one(m_, c))) {
            const auto dc = decompose_conjugation(m_, a, b, c, opt_.max_n, opt_.bound);
            const Outcome o = dc.kind == ConjugationKind::Found                ? Outcome::Pass
                              : dc.kind == ConjugationKind::Failure && !dc.deep ? Outcome::Fail
                                                                                : Outcome::Unknown;
            conj.record(o, describe);
          }
          if (!is_one(m_, c) && !m_.is_invertible(a)) {
            left.record(check_power_divisibility(m_, a, b, c, Side::Left, opt_.max_n, opt_.bound), describe);
          }
          if (!is_one(m_, b) && !m_.is_invertible(a)) {
            right.record(check_power_divisibility(m_, a, b, c, Side::Right, opt_.max_n, opt_.bound), describe);
          }
        }
      }
    }
  }

  void skew(ConditionReport& r) {
    for (std::size_t i = 0; i < n(); ++i) {
      std::map<K, std::vector<std::size_t>> ab;
      for (std::size_t j = 0; j < n(); ++j) ab[kmul_(keys_[i], keys_[j])].push_back(j);
      for (std::size_t l = 0; l < n(); ++l) {
        if (is_one(m_, xs_[l])) continue;
        const K ca = kmul_(keys_[l], keys_[i]);
        for (std::size_t q = 0; q < n(); ++q) {
          const auto it = ab.find(kmul_(ca, keys_[q]));
          if (it == ab.end()) continue;
          for (std::size_t j : it->second) {
            const E &a = xs_[i], &b = xs_[j], &c = xs_[l], &d = xs_[q];
            const auto s = decompose_skew(m_, a, b, c, d, opt_.max_n, opt_.bound);
            // A miss only rules out n <= max_n.
            const Outcome o = s.kind == SkewKind::Witness || s.kind == SkewKind::Left ? Outcome::Pass
                                                                                      : Outcome::Unknown;
            r.record(o, [&] { return show({{"a", &a}, {"b", &b}, {"c", &c}, {"d", &d}}); });
          }
        }
      }
    }
  }

  void abg(ConditionReport& r) {
    for (std::size_t i = 0; i < n(); ++i) {
      for (std::size_t j = 0; j < n(); ++j) {
        const E &a = xs_[i], &b = xs_[j];
        if (m_.is_invertible(a) && m_.is_invertible(b)) continue;
        const auto g = probe_abg(m_, a, b, opt_.bound);
        if (!g) continue;
        r.record(is_one(m_, *g) ? Outcome::Pass : Outcome::Fail,
                 [&] { return show({{"a", &a}, {"b", &b}, {"g", &*g}}); });
      }
    }
  }

  const M& m_;
  const std::vector<E>& xs_;
  SuiteOptions opt_;
  std::function<K(const K&, const K&)> kmul_;
  std::vector<K> keys_;
};

}  // namespace detail

/// Runs every condition over all relations among elements of `sample`.
/// Monoids embedded in G find relations through their images there.
template <ComputableMonoid M>
SuiteReport run_condition_suite(const M& m, const std::vector<typename M::Element>& sample,
                                SuiteOptions opt = {}) {
  using E = typename M::Element;
  if constexpr (requires(const E& a) { m.image(a); }) {
    if (m.has_images()) {
      detail::Sweeper<M, GroupWord> s(
          m, sample, opt, [&](const E& a) { return m.image(a); },
          [](const GroupWord& u, const GroupWord& v) { return u * v; });
      return s.run();
    }
  }
  detail::Sweeper<M, E> s(
      m, sample, opt, [](const E& a) { return a; }, [&](const E& u, const E& v) { return m.mul(u, v); });
  return s.run();
}

}  // namespace firlab
