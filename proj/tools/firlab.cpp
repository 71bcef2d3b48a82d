#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "firlab/io.hpp"
#include "firlab/selftest.hpp"

using namespace firlab;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 2;
constexpr int kUnknown = 3;
constexpr int kUsage = 64;

struct Options {
  std::size_t bound = 32;
  int level_cap = 1;
  long max_n = 8;
  std::uint64_t seed = kDefaultSeed;
  bool json = false;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string read_input(const std::string& source) {
  if (source == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(source);
  if (!in) throw Error("cannot open '" + source + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Inline JSON when the text starts with '{', otherwise a path or "-".
json load_json(const std::string& source) {
  const bool inline_text = !source.empty() && source.front() == '{';
  const std::string text = inline_text ? source : read_input(source);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error((inline_text ? std::string("inline JSON") : source) + ": parse error at byte " +
                std::to_string(e.byte));
  }
}

std::string show_word(const GroupWord& g) { return g.empty() ? "1" : to_string(g); }

// ---------------------------------------------------------------------------
// Monoid targets

std::optional<GoldenInt> parse_golden(const std::string& s) {
  static const std::regex re(R"(^\s*(-?\d+)\s*(?:([+-])\s*(\d+)\s*t)?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  const std::int64_t a = std::stoll(m[1]);
  const std::int64_t b = m[2].matched ? (m[2] == "-" ? -1 : 1) * std::stoll(m[3]) : 0;
  return GoldenInt{a, b};
}

const Presentation& presentation_target(const std::string& target) {
  for (const auto& n : builtin_names()) {
    if (n == target) return builtin(n);
  }
  static std::map<std::string, std::unique_ptr<Presentation>> loaded;
  auto& slot = loaded[target];
  if (!slot) {
    if (target.size() < 5 || target.substr(target.size() - 5) != ".json") {
      throw UnknownName("unknown monoid '" + target + "'");
    }
    slot = std::make_unique<Presentation>(presentation_from_json(load_json(target), target));
  }
  return *slot;
}

/// Calls f(monoid, parse) for the named target; parse turns text into an element.
template <class Fn>
int with_monoid(const std::string& target, const Options& opt, Fn f) {
  if (target == "M0-limit" || target == "M1-limit" || target == "Mphi") {
    LimitView m(limit_monoid(target), opt.level_cap);
    return f(m, [&](const std::string& s) { return m.monoid().parse(s); });
  }
  if (target == "two-three") {
    NumericMonoid m({2, 3});
    return f(m, [&](const std::string& s) {
      try {
        std::size_t pos = 0;
        const long n = std::stol(s, &pos);
        if (pos == s.size() && m.contains(n)) return n;
      } catch (const std::exception&) {
      }
      throw ParseError("'" + s + "' is not an element of <2,3>", 0);
    });
  }
  if (target == "golden-pos") {
    GoldenPosMonoid m;
    return f(m, [](const std::string& s) {
      const auto g = parse_golden(s);
      if (!g || g->sign() < 0) throw ParseError("'" + s + "' is not a nonnegative a+bt", 0);
      return *g;
    });
  }
  if (target.rfind("free:", 0) == 0) {
    FreeMonoid m(target.substr(5));
    const std::string letters = target.substr(5);
    return f(m, [letters](const std::string& s) {
      if (s == "1") return std::string();
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (letters.find(s[i]) == std::string::npos) throw ParseError("unknown letter in '" + s + "'", i);
      }
      return s;
    });
  }
  PresentedMonoid m(presentation_target(target));
  return f(m, [&](const std::string& s) { return m.parse(s == "1" ? "" : s); });
}

Side parse_side(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw UnknownName("side must be left or right, got '" + s + "'");
}

std::optional<LinearForm> parse_h(const std::string& s) {
  if (s.empty()) return std::nullopt;
  static const std::regex re(R"(^\s*(-?\d+)\s*,\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("--grading expects p,q", 0);
  const LinearForm h{std::stoll(m[1]), std::stoll(m[2])};
  if (h.p == 0 && h.q == 0) throw Error("--grading must be nonzero");
  return h;
}

// ---------------------------------------------------------------------------
// Verbs

int cmd_normalize(const Options& opt, const std::string& target, const std::string& word) {
  std::string normal;
  std::optional<GroupWord> image;
  if (target == "M0-limit" || target == "M1-limit" || target == "Mphi") {
    const LimitMonoid& m = limit_monoid(target);
    const LimitElement a = m.parse(word);
    normal = m.show(a);
    image = m.image(a);
  } else {
    const Presentation& p = presentation_target(target);
    const NormalWord n = normalize(p, word == "1" ? "" : word);
    normal = n.empty() ? "1" : to_string(n);
    if (p.images) image = embed(p, n);
  }
  if (opt.json) {
    emit({{"target", target},
          {"input", word},
          {"normal", normal},
          {"image", image ? json(show_word(*image)) : json(nullptr)}});
  } else {
    std::cout << normal << "\n";
  }
  return kOk;
}

int cmd_reduce(const Options& opt, const std::string& word) {
  const GroupWord g = parse_word(word == "1" ? "" : word);
  if (opt.json) {
    emit({{"input", word}, {"reduced", show_word(g)}, {"length", g.size()}});
  } else {
    std::cout << show_word(g) << "\n";
  }
  return kOk;
}

int cmd_orbit(const Options& opt, const std::string& endo, const std::string& word, std::size_t n) {
  const auto orbit = endo_orbit(endo_by_name(endo), parse_word(word == "1" ? "" : word), n);
  if (opt.json) {
    json out = json::array();
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      out.push_back({{"n", k}, {"word", show_word(orbit[k])}, {"length", orbit[k].size()}});
    }
    emit({{"endo", endo}, {"orbit", out}});
  } else {
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      std::cout << k << " " << orbit[k].size() << " " << show_word(orbit[k]) << "\n";
    }
  }
  return kOk;
}

int cmd_degree(const Options& opt, const std::string& word, const std::string& h_text) {
  const GroupWord g = parse_word(word == "1" ? "" : word);
  const BiDegree d = delta(g);
  const auto h = parse_h(h_text);
  if (opt.json) {
    json out{{"word", show_word(g)}, {"delta", {d.r, d.s}}, {"eta", eta(d).to_string()}};
    if (h) out["h"] = (*h)(d);
    emit(out);
  } else {
    std::cout << "delta " << d << "\neta " << eta(d) << "\n";
    if (h) std::cout << h->to_string() << ": " << (*h)(d) << "\n";
  }
  return kOk;
}

int verdict_exit(const MembershipVerdict& v) {
  return v.member() ? kOk : v.definitely_not() ? kFailed : kUnknown;
}

int cmd_member(const Options& opt, const std::string& target, const std::string& word) {
  const LimitMonoid& m = limit_monoid(target);
  const GroupWord g = parse_word(word == "1" ? "" : word);
  const MembershipVerdict v = m.membership(g, opt.bound);
  if (opt.json) {
    emit({{"target", target},
          {"word", show_word(g)},
          {"verdict", to_string(v.kind)},
          {"witness", v.witness ? json(m.show(*v.witness)) : json(nullptr)},
          {"reason", to_string(v.reason)},
          {"bound", opt.bound},
          {"bound_used", v.bound_used}});
  } else {
    std::cout << to_string(v.kind);
    if (v.witness) std::cout << " " << m.show(*v.witness);
    if (v.definitely_not()) std::cout << " " << to_string(v.reason);
    if (v.kind == Verdict::Unknown) std::cout << " bound " << opt.bound;
    std::cout << "\n";
  }
  return verdict_exit(v);
}

int cmd_divide(const Options& opt, const std::string& target, const std::string& a_text, const std::string& b_text,
               const std::string& side_text) {
  const Side side = parse_side(side_text);
  return with_monoid(target, opt, [&](const auto& m, auto parse) {
    const auto a = parse(a_text);
    const auto b = parse(b_text);
    const auto d = m.divides(a, b, side, opt.bound);
    if (opt.json) {
      emit({{"target", target},
            {"a", m.show(a)},
            {"b", m.show(b)},
            {"side", side_text},
            {"verdict", to_string(d.kind)},
            {"cofactor", d.yes() ? json(m.show(*d.cofactor)) : json(nullptr)},
            {"bound", opt.bound}});
    } else {
      std::cout << to_string(d.kind);
      if (d.yes()) std::cout << " " << m.show(*d.cofactor);
      std::cout << "\n";
    }
    return d.yes() ? kOk : d.no() ? kFailed : kUnknown;
  });
}

int cmd_decompose(const Options& opt, const std::string& target, const std::vector<std::string>& args) {
  if (args.size() != 3 && args.size() != 4) throw Error("decompose takes a b c (ab = ca) or a b c d (ab = cad)");
  return with_monoid(target, opt, [&](const auto& m, auto parse) {
    std::vector<std::decay_t<decltype(parse(args[0]))>> xs;
    for (const auto& s : args) xs.push_back(parse(s));
    json out{{"target", target}, {"max_n", opt.max_n}, {"bound", opt.bound}};
    int code = kOk;
    std::string line;
    if (xs.size() == 3) {
      const auto r = decompose_conjugation(m, xs[0], xs[1], xs[2], opt.max_n, opt.bound);
      out["kind"] = to_string(r.kind);
      line = to_string(r.kind);
      if (r.kind == ConjugationKind::Found) {
        out["n"] = r.n;
        out["e"] = m.show(*r.e);
        out["f"] = m.show(*r.f);
        line += " n=" + std::to_string(r.n) + " e=" + m.show(*r.e) + " f=" + m.show(*r.f);
      }
      code = r.kind == ConjugationKind::Found ? kOk : r.kind == ConjugationKind::Failure ? kFailed : kUnknown;
    } else {
      const auto r = decompose_skew(m, xs[0], xs[1], xs[2], xs[3], opt.max_n, opt.bound);
      out["kind"] = to_string(r.kind);
      line = to_string(r.kind);
      if (r.kind == SkewKind::Witness) {
        out["n"] = r.n;
        out["b_prime"] = m.show(*r.b_prime);
        line += " n=" + std::to_string(r.n) + " b'=" + m.show(*r.b_prime);
      }
      code = r.kind == SkewKind::Failure ? kFailed : r.kind == SkewKind::Unknown ? kUnknown : kOk;
    }
    if (opt.json) {
      emit(out);
    } else {
      std::cout << line << "\n";
    }
    return code;
  });
}

int cmd_check(const Options& opt, const std::string& target, const std::string& suite, std::optional<std::size_t> len) {
  if (suite != "conditions") throw UnknownName("unknown suite '" + suite + "'");
  const SuiteOptions so{opt.bound, opt.max_n};
  return with_monoid(target, opt, [&](const auto& m, auto) {
    using M = std::decay_t<decltype(m)>;
    std::size_t n = 3;
    if constexpr (std::is_same_v<M, NumericMonoid>) n = 12;
    if constexpr (std::is_same_v<M, GoldenPosMonoid>) n = 2;
    if constexpr (std::is_same_v<M, PresentedMonoid>) n = 2;
    const SuiteReport rep = run_condition_suite(m, m.enumerate(len.value_or(n)), so);
    bool fail = false, unknown = false;
    for (const auto& c : rep.conditions) {
      fail = fail || c.outcome == Outcome::Fail;
      unknown = unknown || c.outcome == Outcome::Unknown;
    }
    if (opt.json) {
      json out = suite_report_to_json(rep, so);
      out["sample_length"] = len.value_or(n);
      emit(out);
    } else {
      std::cout << rep.target << ": " << rep.sample_size << " elements, bound " << so.bound << ", max-n " << so.max_n
                << "\n";
      for (const auto& c : rep.conditions) {
        std::printf("%-26s %-8s cases %zu", c.key.c_str(), to_string(c.outcome), c.cases);
        if (c.witness) std::printf("  witness %s", c.witness->c_str());
        if (c.unknown_case) std::printf("  undecided %s", c.unknown_case->c_str());
        std::printf("\n");
      }
      std::fflush(stdout);
    }
    return fail ? kFailed : unknown ? kUnknown : kOk;
  });
}

// --- trivialize

template <RingAmbient A>
void print_certificate(const Relation<A>& rel, const Certificate<A, Rational>& cert) {
  std::cout << "relation: " << rel.to_string() << "\n";
  const auto states = replay(rel, cert.ops);
  for (std::size_t k = 0; k < cert.ops.size(); ++k) {
    std::cout << k + 1 << ". " << cert.ops[k].to_string() << "\n";
  }
  std::cout << "final: " << cert.final_relation.to_string() << "\n";
}

template <RingAmbient A>
int finish(const Options& opt, const Relation<A>& rel, const TrivializeResult<A, Rational>& res, const std::string& method,
           const std::optional<LinearForm>& h) {
  if (!res.ok()) {
    if (opt.json) {
      emit({{"relation", relation_to_json(rel)},
            {"method", method},
            {"verdict", "GiveUp"},
            {"diagnostic", res.diagnostic},
            {"stuck", res.stuck ? relation_to_json(*res.stuck) : json(nullptr)}});
    } else {
      std::cout << "relation: " << rel.to_string() << "\ngave up: " << res.diagnostic << "\n";
      if (res.stuck) std::cout << "stuck on: " << res.stuck->to_string() << "\n";
    }
    return kUnknown;
  }
  const VerifyReport rep = verify_certificate(rel, *res.certificate);
  if (opt.json) {
    json out{{"relation", relation_to_json(rel)},
             {"method", method},
             {"certificate", certificate_to_json(*res.certificate)},
             {"verified", rep.ok}};
    if (h) out["h"] = {h->p, h->q};
    if (!res.layers.empty()) out["layers"] = res.layers;
    emit(out);
  } else {
    if (h) std::cout << "grading: " << h->to_string() << "\n";
    print_certificate(rel, *res.certificate);
    std::cout << rep.message << "\n";
  }
  return rep.ok ? kOk : kFailed;
}

template <RingAmbient A>
int check_given(const Options& opt, const A& amb, const Relation<A>& rel, const std::string& source) {
  const auto cert = certificate_from_json(amb, load_json(source), source);
  const VerifyReport rep = verify_certificate(rel, cert);
  if (opt.json) {
    emit({{"verified", rep.ok}, {"message", rep.message}, {"step", rep.step}});
  } else {
    std::cout << rep.message << (rep.ok ? "" : " (after " + std::to_string(rep.step) + " ops)") << "\n";
  }
  return rep.ok ? kOk : kFailed;
}

int cmd_trivialize(const Options& opt, const std::string& source, const std::string& h_text,
                   const std::string& cert_source) {
  const json j = load_json(source);
  const std::string name = ambient_of(j, source);
  const auto h = parse_h(h_text);
  return std::visit(
      [&](const auto* amb) -> int {
        using A = std::decay_t<decltype(*amb)>;
        const Relation<A> rel = relation_from_json(*amb, j, source);
        if (!cert_source.empty()) return check_given(opt, *amb, rel, cert_source);
        TrivializeResult<A, Rational> res;
        if constexpr (std::is_same_v<A, FreeAlgebra>) {
          res.certificate = trivialize_free(rel);
          return finish(opt, rel, res, "free", std::nullopt);
        } else if constexpr (std::is_same_v<A, ZRing>) {
          res.certificate = trivialize_principal(rel);
          return finish(opt, rel, res, "euclidean", std::nullopt);
        } else {
          if (h) return finish(opt, rel, trivialize_h_homogeneous(rel, *h), "layers", h);
          try {
            return finish(opt, rel, trivialize_delta_homogeneous(rel), "delta", std::nullopt);
          } catch (const NotHomogeneous&) {
          }
          const auto found = find_homogenizing_h(rel);
          if (!found) throw NotHomogeneous("relation is not homogeneous for any h o delta");
          return finish(opt, rel, trivialize_h_homogeneous(rel, *found), "layers", found);
        }
      },
      ambient_by_name(name));
}

// --- demos

int demo_seven(const Options& opt) {
  const LimitRing& ring = limit_ring("M0-limit");
  const LimitMonoid& m = ring.monoid();
  const auto rel = build_cedo_relation(ring, m.parse("y"), m.parse("x z"), m.parse("x"), m.one());
  const auto shifted = shift_to_free(rel);
  if (!shifted) throw std::logic_error("demo relation does not shift to the free algebra");
  const auto cert = trivialize_free(shifted->rel);
  const auto states = replay(shifted->rel, cert.ops);
  const auto pulled = trivialize_delta_homogeneous(rel);
  const VerifyReport free_rep = verify_certificate(shifted->rel, cert);
  const VerifyReport rep = pulled.ok() ? verify_certificate(rel, *pulled.certificate) : VerifyReport{};
  const bool ok = free_rep.ok && rep.ok;
  if (opt.json) {
    json steps = json::array();
    for (std::size_t k = 0; k < cert.ops.size(); ++k) {
      steps.push_back({{"op", cert.ops[k].to_string()},
                       {"u", {states[k + 1].u[0].to_string(), states[k + 1].u[1].to_string()}}});
    }
    emit({{"relation", relation_to_json(rel)},
          {"shift", shifted->k},
          {"shifted", relation_to_json(shifted->rel)},
          {"steps", steps},
          {"certificate", pulled.ok() ? certificate_to_json(*pulled.certificate) : json(nullptr)},
          {"verified", ok}});
    return ok ? kOk : kFailed;
  }
  std::cout << "relation in " << ring.name() << ": " << rel.to_string() << "\n";
  std::cout << "apply sigma^" << shifted->k << ": " << shifted->rel.to_string() << "\n";
  for (std::size_t k = 0; k < cert.ops.size(); ++k) {
    std::cout << "step " << k + 1 << ": " << cert.ops[k].to_string() << "  ->  u = (" << states[k + 1].u[0].to_string()
              << ", " << states[k + 1].u[1].to_string() << ")\n";
  }
  std::cout << "final: " << cert.final_relation.to_string() << "\n";
  if (pulled.ok()) {
    std::cout << "in " << ring.name() << ":";
    for (const auto& op : pulled.certificate->ops) std::cout << "  " << op.to_string() << ";";
    std::cout << "\n";
  }
  std::cout << (ok ? "certificate verified" : "certificate rejected: " + free_rep.message + " / " + rep.message)
            << "\n";
  return ok ? kOk : kFailed;
}

int demo_leapfrog(const Options& opt) {
  json out = json::array();
  bool ok = true;
  for (int k = 1; k <= 5; ++k) {
    const auto rel = leapfrog(k);
    const auto cert = trivialize_free(rel);
    const VerifyReport rep = verify_certificate(rel, cert);
    ok = ok && rep.ok;
    const std::string lhs = "(" + rel.u[0].to_string() + ")(" + rel.v[0].to_string() + ")";
    const std::string rhs = "(" + (-rel.u[1]).to_string() + ")(" + rel.v[1].to_string() + ")";
    if (opt.json) {
      out.push_back({{"k", k}, {"identity", lhs + " = " + rhs}, {"ops", cert.ops.size()}, {"verified", rep.ok}});
    } else {
      std::cout << k << ": " << lhs << " = " << rhs << "  [" << cert.ops.size() << " ops, " << rep.message << "]\n";
    }
  }
  if (opt.json) emit(out);
  return ok ? kOk : kFailed;
}

int demo_five(const Options& opt) {
  FreeMonoid f("vwxyz");
  const std::vector<std::string> names{"a", "b", "c", "d", "e", "f", "g", "h"};
  const std::vector<std::string> good{"x", "z", "wz", "wx", "yx", "xy", "xw", "zw"};
  std::vector<std::string> bad = good;
  bad[7] = "wz";
  const std::vector<std::string>* cases[] = {&good, &bad};
  json out = json::array();
  int code = kOk;
  for (const auto* xs : cases) {
    const auto& v = *xs;
    const auto r = five_relations_check(f, v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]);
    std::string assign;
    for (std::size_t i = 0; i < 8; ++i) assign += (i ? " " : "") + names[i] + "=" + v[i];
    if (opt.json) {
      out.push_back({{"assignment", assign}, {"outcome", to_string(r.outcome)}, {"failed", r.failed}});
    } else {
      std::cout << assign << ": " << to_string(r.outcome);
      for (const auto& s : r.failed) std::cout << " " << s;
      std::cout << "\n";
    }
    if (xs == &good && r.outcome != Outcome::Pass) code = kFailed;
    if (xs == &bad && r.outcome != Outcome::Fail) code = kFailed;
  }
  if (opt.json) emit(out);
  return code;
}

int cmd_demo(const Options& opt, const std::string& name) {
  if (name == "seven") return demo_seven(opt);
  if (name == "leapfrog") return demo_leapfrog(opt);
  if (name == "five") return demo_five(opt);
  throw UnknownName("unknown demo '" + name + "' (seven, leapfrog, five)");
}

int cmd_selftest(const Options& opt) {
  const auto results = run_acceptance(opt.seed);
  bool all = true;
  json out = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    if (opt.json) {
      out.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    } else {
      std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    }
  }
  if (opt.json) emit({{"seed", opt.seed}, {"criteria", out}});
  std::fflush(stdout);
  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"firlab: monoids, limit monoids, conditions and relation trivialization"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--bound", opt.bound, "search bound for divisibility and membership")->capture_default_str();
  app.add_option("--level-cap", opt.level_cap, "highest level enumerated in limit monoids")->capture_default_str();
  app.add_option("--max-n", opt.max_n, "largest power tried in decompositions")->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized suites")->envname("FIRLAB_SEED")->capture_default_str();
  app.add_flag("--json", opt.json, "JSON output");

  std::string target, word, endo, a, b, side = "left", suite = "conditions", h, source, cert, demo;
  std::vector<std::string> elems;
  std::size_t n = 0;
  std::optional<std::size_t> len;

  auto* normalize_cmd = app.add_subcommand("normalize", "normal form in a presented or limit monoid");
  normalize_cmd->add_option("monoid", target, "builtin name, limit monoid, or presentation .json")->required();
  normalize_cmd->add_option("word", word, "space-separated tokens, @n: prefix for limit levels")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "free reduction in the group on x, y");
  reduce_cmd->add_option("word", word, "tokens x, y, x-, y-, z, z-")->required();

  auto* orbit_cmd = app.add_subcommand("orbit", "iterate an endomorphism of the group");
  orbit_cmd->add_option("endo", endo, "sigma, sigma-half, phi, theta (suffix -inv for inverses)")->required();
  orbit_cmd->add_option("word", word)->required();
  orbit_cmd->add_option("n", n, "number of iterations")->required();

  auto* degree_cmd = app.add_subcommand("degree", "delta and eta degrees of a group word");
  degree_cmd->add_option("word", word)->required();
  degree_cmd->add_option("--grading", h, "linear form p,q applied to delta");

  auto* member_cmd = app.add_subcommand("member", "is a group word in a limit monoid");
  member_cmd->add_option("monoid", target, "M0-limit, M1-limit, Mphi")->required();
  member_cmd->add_option("word", word)->required();

  auto* divide_cmd = app.add_subcommand("divide", "does a divide b");
  divide_cmd->add_option("monoid", target)->required();
  divide_cmd->add_option("a", a)->required();
  divide_cmd->add_option("b", b)->required();
  divide_cmd->add_option("--side", side, "left (b = a h) or right (b = h a)")->capture_default_str();

  auto* decompose_cmd = app.add_subcommand("decompose", "a b c: ab = ca as a = (ef)^n e; a b c d: ab = cad");
  decompose_cmd->add_option("monoid", target)->required();
  decompose_cmd->add_option("elements", elems)->required();

  auto* check_cmd = app.add_subcommand("check", "run a condition suite over an enumerated sample");
  check_cmd->add_option("monoid", target,
                        "M0-limit, M1-limit, Mphi, builtin presentation, .json file, two-three, golden-pos, free:<letters>")
      ->required();
  check_cmd->add_option("--suite", suite, "conditions")->capture_default_str();
  check_cmd->add_option("--len", len, "sample size: word length, or bound for two-three and golden-pos");

  auto* trivialize_cmd = app.add_subcommand("trivialize", "certificate of trivialization for a relation");
  trivialize_cmd->add_option("relation", source, "relation JSON: path, - for stdin, or inline text")->required();
  trivialize_cmd->add_option("--grading", h, "grade by h o delta with h = p,q");
  trivialize_cmd->add_option("--certificate", cert, "verify this certificate instead of computing one");

  auto* demo_cmd = app.add_subcommand("demo", "worked examples");
  demo_cmd->add_option("name", demo, "seven, leapfrog, five")->required();

  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return kOk;
    std::cerr << app.help();
    return kUsage;
  }

  try {
    if (*normalize_cmd) return cmd_normalize(opt, target, word);
    if (*reduce_cmd) return cmd_reduce(opt, word);
    if (*orbit_cmd) return cmd_orbit(opt, endo, word, n);
    if (*degree_cmd) return cmd_degree(opt, word, h);
    if (*member_cmd) return cmd_member(opt, target, word);
    if (*divide_cmd) return cmd_divide(opt, target, a, b, side);
    if (*decompose_cmd) return cmd_decompose(opt, target, elems);
    if (*check_cmd) return cmd_check(opt, target, suite, len);
    if (*trivialize_cmd) return cmd_trivialize(opt, source, h, cert);
    if (*demo_cmd) return cmd_demo(opt, demo);
    if (*selftest_cmd) return cmd_selftest(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  return kUsage;
}
