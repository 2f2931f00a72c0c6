#pragma once

// Command-line front end. run() is separate from main so tests can drive it directly.
//
// Exit codes: 0 ok / accepted / true, 1 rejected / false, 2 bad arguments,
// 3 indeterminate (p-adic precision exhausted), 4 internal error.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "g2tori/g2tori.hpp"

namespace g2t::cli {

using json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kNegative = 1, kUsage = 2, kIndeterminate = 3, kInternal = 4 };

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(std::string(g2t::detail::trim(cur)));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

inline std::vector<Rational> parse_rational_list(const std::string& s, const std::string& flag) {
  std::vector<Rational> out;
  for (const auto& part : split(s, ',')) {
    if (part.empty()) throw ArgumentError(flag + ": empty entry in '" + s + "'");
    out.push_back(parse_rational(part));
  }
  return out;
}

inline CDAlgebra parse_algebra(const std::string& s) {
  auto params = parse_rational_list(s, "--delta");
  if (params.empty() || params.size() > 3) throw ArgumentError("--delta takes 1 to 3 parameters");
  for (const auto& p : params)
    if (p == 0) throw ArgumentError("--delta parameters must be nonzero");
  return CDAlgebra(params);
}

inline CDElement parse_element(const CDAlgebra& alg, const std::string& s, const std::string& flag) {
  auto coords = parse_rational_list(s, flag);
  if (coords.size() != alg.dimension())
    throw ArgumentError(flag + " needs " + std::to_string(alg.dimension()) + " coordinates");
  return alg.element(std::move(coords));
}

inline QuadraticEtale parse_quadratic(const std::string& s) {
  Integer d = parse_integer(s);
  if (d == 0 || !is_squarefree(d)) throw ArgumentError("--quad-d must be a squarefree nonzero integer");
  return QuadraticEtale(d);
}

/// E and lambda from the flags. A single cubic polynomial is factored into its canonical
/// components; a comma-separated list is taken as the components themselves. Lambda is one
/// polynomial (its image in every component) or one part per component in the order given.
inline std::pair<CubicEtale, EtaleElement> parse_etale(const std::string& cubic, const std::string& lambda) {
  std::vector<Poly> given;
  for (const auto& part : split(cubic, ',')) {
    if (part.empty()) throw ArgumentError("--cubic: empty component");
    given.push_back(parse_poly(part));
  }
  std::optional<CubicEtale> e;
  std::vector<std::size_t> order;
  if (given.size() == 1) {
    e = CubicEtale::from_polynomial(given[0]);
  } else {
    order = CubicEtale::sorting_permutation(given);
    e = CubicEtale(given);
  }
  std::vector<Poly> parts;
  for (const auto& part : split(lambda, ',')) {
    if (part.empty()) throw ArgumentError("--lambda: empty part");
    parts.push_back(parse_poly(part));
  }
  if (parts.size() == 1) return {*e, e->element_from_poly(parts[0])};
  if (parts.size() != e->size())
    throw ArgumentError("--lambda needs 1 or " + std::to_string(e->size()) + " parts");
  if (!order.empty()) {
    std::vector<Poly> sorted;
    for (auto k : order) sorted.push_back(parts[k]);
    parts = std::move(sorted);
  }
  return {*e, e->element(std::move(parts))};
}

inline std::vector<Integer> parse_primes(const std::string& s) {
  std::vector<Integer> out;
  for (const auto& part : split(s, ',')) {
    Integer p = parse_integer(part);
    if (!is_prime(p)) throw ArgumentError("--prime: " + part + " is not prime");
    out.push_back(p);
  }
  return out;
}

inline json rationals(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

inline std::string join(const std::vector<Rational>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + to_string(xs[i]);
  return s;
}

struct Output {
  bool tsv = false;
  std::ostream& out;

  void emit(const json& j, const std::vector<std::vector<std::string>>& table) const {
    if (!tsv) {
      out << j.dump(2) << '\n';
      return;
    }
    for (const auto& row : table) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
      out << '\n';
    }
  }
};

}  // namespace detail

inline int cmd_count_cd(const detail::Output& o, const std::string& field_s, int rank) {
  auto field = FieldDescriptor::parse(field_s);
  if (rank < 0) throw ArgumentError("--rank must be 2, 4 or 8");
  auto res = count_cd_classes(field, static_cast<std::size_t>(rank));
  json reps = json::array();
  std::vector<std::vector<std::string>> table{{"field", "rank", "count", "representative"}};
  for (const auto& r : res.representatives) {
    reps.push_back(detail::rationals(r));
    table.push_back({field.to_string(), std::to_string(rank), std::to_string(res.count), detail::join(r)});
  }
  json j;
  j["field"] = field.to_string();
  j["rank"] = rank;
  j["count"] = res.count;
  j["representatives"] = reps;
  o.emit(j, table);
  return kOk;
}

inline int cmd_classify_octonion(const detail::Output& o, const std::string& delta) {
  CDAlgebra alg = detail::parse_algebra(delta);
  if (alg.rank() != 8) throw ArgumentError("classify-octonion needs three parameters");
  auto [pos, neg] = signature(norm_form(alg));
  const bool definite = is_definite(alg);
  const CDAlgebra ref = definite ? CDAlgebra::octonions() : CDAlgebra::split_octonions();
  json j;
  j["delta"] = detail::rationals(alg.params());
  j["signature"] = {pos, neg};
  j["definite"] = definite;
  j["class"] = definite ? "definite" : "split";
  j["representative"] = detail::rationals(ref.params());
  o.emit(j, {{"delta", "signature", "class", "representative"},
             {detail::join(alg.params()), std::to_string(pos) + "," + std::to_string(neg),
              definite ? "definite" : "split", detail::join(ref.params())}});
  return kOk;
}

inline SubalgebraFrame frame_from_flags(const CDAlgebra& alg, const std::string& x, const std::string& y,
                                        const std::string& z) {
  SubalgebraFrame f = standard_frame(alg);
  if (!x.empty()) f.x = detail::parse_element(alg, x, "--x");
  if (!y.empty()) f.y = detail::parse_element(alg, y, "--y");
  if (!z.empty()) f.z = detail::parse_element(alg, z, "--z");
  return f;
}

inline int cmd_check_structures(const detail::Output& o, const std::string& delta, const std::string& x,
                                const std::string& y, const std::string& z) {
  CDAlgebra alg = detail::parse_algebra(delta);
  if (alg.rank() != 8) throw ArgumentError("check-structures needs three parameters");
  auto rep = check_structures(frame_from_flags(alg, x, y, z));
  json laws = json::array();
  std::vector<std::vector<std::string>> table{{"law", "cases", "failures"}};
  for (const auto& l : rep.laws) {
    laws.push_back({{"name", l.name}, {"cases", l.cases}, {"failures", l.failures}});
    table.push_back({l.name, std::to_string(l.cases), std::to_string(l.failures)});
  }
  json j;
  j["delta"] = detail::rationals(alg.params());
  j["passed"] = rep.passed();
  j["laws"] = laws;
  o.emit(j, table);
  return rep.passed() ? kOk : kNegative;
}

inline int cmd_derivations(const detail::Output& o, const std::string& delta, const std::string& x) {
  CDAlgebra alg = detail::parse_algebra(delta);
  if (alg.rank() != 8) throw ArgumentError("derivations needs three parameters");
  SubalgebraFrame f = frame_from_flags(alg, x, "", "");
  auto der = derivation_algebra(alg);
  auto st = stabilizer_dims(alg, f.x);
  std::size_t r = torus_rank(standard_frame(alg));
  json j;
  j["delta"] = detail::rationals(alg.params());
  j["dimension"] = der.dimension;
  j["rank"] = r;
  j["stabilizer_dimension"] = st.stabilizer;
  j["orbit_dimension"] = st.orbit;
  o.emit(j, {{"dimension", "rank", "stabilizer_dimension", "orbit_dimension"},
             {std::to_string(der.dimension), std::to_string(r), std::to_string(st.stabilizer),
              std::to_string(st.orbit)}});
  return kOk;
}

inline int cmd_check_torus(const detail::Output& o, const std::string& delta, const std::string& quad_d,
                           const std::string& cubic, const std::string& lambda, const std::string& norm_s) {
  CDAlgebra alg = detail::parse_algebra(delta);
  if (alg.rank() != 8) throw ArgumentError("check-torus needs three --delta parameters");
  auto [e, l] = detail::parse_etale(cubic, lambda);
  TorusDatum t{alg, detail::parse_quadratic(quad_d), e, l, parse_normalization(norm_s)};
  Verdict v = validate(t);
  json reasons = json::array();
  std::vector<std::vector<std::string>> table{{"status", to_string(v.status), ""}, {"condition", "passed", "detail"}};
  for (const auto& c : v.reasons) {
    reasons.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    table.push_back({c.name, c.passed ? "true" : "false", c.detail});
  }
  json j;
  j["status"] = to_string(v.status);
  j["accepted"] = v.accepted();
  j["normalization"] = to_string(t.normalization);
  j["components"] = json::array();
  for (const auto& g : e.components()) j["components"].push_back(g.to_string());
  j["lambda"] = json::array();
  for (const auto& p : l.parts) j["lambda"].push_back(p.to_string());
  j["real_place_case"] = to_string(real_place_case(t));
  j["reasons"] = reasons;
  if (v.status == VerdictStatus::indeterminate) j["indeterminate_prime"] = v.indeterminate_prime;
  o.emit(j, table);
  switch (v.status) {
    case VerdictStatus::accepted: return kOk;
    case VerdictStatus::rejected: return kNegative;
    case VerdictStatus::indeterminate: return kIndeterminate;
  }
  return kInternal;
}

inline int cmd_orbit_table(const detail::Output& o, const std::string& quad_d, const std::string& cubic,
                           const std::string& primes, int depth) {
  QuadraticEtale a = detail::parse_quadratic(quad_d);
  auto [e, unused] = detail::parse_etale(cubic, "1");
  (void)unused;
  LocalOptions opt;
  opt.max_depth = depth;
  json rows = json::array();
  std::vector<std::vector<std::string>> table{{"prime", "aut_group", "splitting", "a_split", "kernel_size", "orbit_count"}};
  const std::string aut = to_string(aut_group(e));
  for (const auto& p : detail::parse_primes(primes)) {
    auto split = local_splitting(e, p, opt).to_string();
    bool a_split = a.is_split_at(Place::prime(p));
    auto row = orbit_table(a, e, p, opt);
    rows.push_back({{"prime", p.str()},
                    {"splitting", split},
                    {"a_split", a_split},
                    {"kernel_size", row.kernel_size},
                    {"orbit_count", row.orbit_count}});
    table.push_back({p.str(), aut, split, a_split ? "true" : "false", std::to_string(row.kernel_size),
                     std::to_string(row.orbit_count)});
  }
  json j;
  j["quad_d"] = a.d().str();
  j["components"] = json::array();
  for (const auto& g : e.components()) j["components"].push_back(g.to_string());
  j["aut_group"] = aut;
  j["rows"] = rows;
  o.emit(j, table);
  return kOk;
}

inline int cmd_embeds(const detail::Output& o, const std::string& delta, const std::string& quad_d) {
  CDAlgebra alg = detail::parse_algebra(delta);
  if (alg.rank() != 8) throw ArgumentError("embeds needs three --delta parameters");
  QuadraticEtale a = detail::parse_quadratic(quad_d);
  bool ok = embeds_quadratic(a.d(), alg);
  json j;
  j["delta"] = detail::rationals(alg.params());
  j["quad_d"] = a.d().str();
  j["embeds"] = ok;
  o.emit(j, {{"delta", "quad_d", "embeds"}, {detail::join(alg.params()), a.d().str(), ok ? "true" : "false"}});
  return ok ? kOk : kNegative;
}

/// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic for Cayley-Dickson algebras, G2 and its maximal tori", "g2tori"};
  app.require_subcommand(1);
  app.fallthrough();
  bool tsv = false, json_flag = false;
  auto* tsv_opt = app.add_flag("--tsv", tsv, "Tab-separated output");
  app.add_flag("--json", json_flag, "JSON output (default)")->excludes(tsv_opt);

  std::string delta = "-1,-1,-1", field, quad_d, cubic, lambda = "1", norm = "thm", primes, x, y, z;
  int rank = 8, depth = kDefaultHenselDepth;

  auto* count = app.add_subcommand("count-cd", "Count isomorphism classes of CD algebras");
  count->add_option("--field", field, "c, r, q or q<p>")->required();
  count->add_option("--rank", rank, "2, 4 or 8")->required();

  auto* classify = app.add_subcommand("classify-octonion", "Rational class of an octonion algebra");
  classify->add_option("--delta", delta, "Parameters a,b,c")->required();

  auto* structures = app.add_subcommand("check-structures", "Check the A_x-module identities");
  structures->add_option("--delta", delta, "Parameters a,b,c")->required();
  structures->add_option("--x", x, "Frame element x (8 coordinates)");
  structures->add_option("--y", y, "Frame element y");
  structures->add_option("--z", z, "Frame element z");

  auto* derivs = app.add_subcommand("derivations", "Derivation algebra and stabilizer dimensions");
  derivs->add_option("--delta", delta, "Parameters a,b,c")->required();
  derivs->add_option("--x", x, "Element whose stabilizer is computed");

  auto* torus = app.add_subcommand("check-torus", "Validate a torus datum (A, E, lambda)");
  torus->add_option("--delta", delta, "Parameters a,b,c")->required();
  torus->add_option("--quad-d", quad_d, "A = Q(sqrt d)")->required();
  torus->add_option("--cubic", cubic, "Cubic polynomial or comma-separated components")->required();
  torus->add_option("--lambda", lambda, "One polynomial or one per component");
  torus->add_option("--norm", norm, "thm or cor");

  auto* orbits = app.add_subcommand("orbit-table", "Local kernel sizes and Aut(E)-orbit counts");
  orbits->add_option("--quad-d", quad_d, "A = Q(sqrt d)")->required();
  orbits->add_option("--cubic", cubic, "Cubic polynomial or comma-separated components")->required();
  orbits->add_option("--prime", primes, "Comma-separated primes")->required();
  orbits->add_option("--hensel-depth", depth, "Hensel recursion cap")->check(CLI::NonNegativeNumber);

  auto* emb = app.add_subcommand("embeds", "Whether Q(sqrt d) embeds in the octonion algebra");
  emb->add_option("--delta", delta, "Parameters a,b,c")->required();
  emb->add_option("--quad-d", quad_d, "d")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  detail::Output o{tsv, out};
  try {
    if (*count) return cmd_count_cd(o, field, rank);
    if (*classify) return cmd_classify_octonion(o, delta);
    if (*structures) return cmd_check_structures(o, delta, x, y, z);
    if (*derivs) return cmd_derivations(o, delta, x);
    if (*torus) return cmd_check_torus(o, delta, quad_d, cubic, lambda, norm);
    if (*orbits) return cmd_orbit_table(o, quad_d, cubic, primes, depth);
    if (*emb) return cmd_embeds(o, delta, quad_d);
  } catch (const Indeterminate& e) {
    err << "indeterminate: " << e.what() << '\n';
    return kIndeterminate;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace g2t::cli
