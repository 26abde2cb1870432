#include "cli.hpp"

#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "orthoscalar/error.hpp"
#include "orthoscalar/io.hpp"

namespace orthoscalar::cli {

namespace {

using io::json;

struct Flags {
  std::string quiver, dims, chi, rep, rep_a, rep_b, out, parity, via = "functors";
  double tol = 1e-8;
  double rank_tol = 1e-8;
  double scale = 1.0;
  std::uint64_t seed = 0;
  int restarts = 20;
  int max_iter = 20000;
  std::int64_t max_norm = 6;
  int depth = 12;
  int samples = 1;
  bool human = false;
};

struct Outcome {
  json body;
  int code = 0;
};

// Errors that describe a well-formed input failing a mathematical precondition.
const std::set<std::string>& verdict_errors() {
  static const std::set<std::string> codes = {
      "NotDynkin", "NotExtendedDynkin", "NotRoot", "ZeroVector", "Infeasible", "NoChainFound",
      "CharacterObstruction", "NotASolution", "Decomposable", "NotOrthoscalar", "NegativeReflectedDim",
      "ZeroCharacterAtReflectedVertex", "NegativeOutputCharacter"};
  return codes;
}

const std::set<std::string>& numerical_errors() {
  static const std::set<std::string> codes = {"NumericalFailure", "Overflow"};
  return codes;
}

void print_human(std::ostream& out, const json& j, const std::string& prefix = "") {
  if (!j.is_object()) {
    out << (prefix.empty() ? "" : prefix + ": ") << j.dump() << '\n';
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object() && !it->empty() && it->size() <= 12 && key.find("matrices") == std::string::npos)
      print_human(out, *it, key);
    else
      out << key << ": " << it->dump() << '\n';
  }
}

Quiver load_quiver(const Flags& f) { return io::quiver_from_json(io::read_json(f.quiver)); }
DimVector load_dims(const Quiver& q, const Flags& f) { return io::dims_from_json(q, io::read_json(f.dims)); }
Character load_chi(const Quiver& q, const Flags& f) { return io::character_from_json(q, io::read_json(f.chi)); }
Representation load_rep(const std::string& path) { return io::representation_from_json(io::read_json(path)); }

json roots_to_json(const Quiver& q, const std::vector<DimVector>& roots) {
  json list = json::array();
  for (const DimVector& d : roots) list.push_back(io::dims_to_json(q, d));
  return list;
}

Outcome cmd_classify(const Flags& f) { return {io::to_json(classify(load_quiver(f))), 0}; }

Outcome cmd_tits(const Flags& f) {
  const Quiver q = load_quiver(f);
  const DimVector d = load_dims(q, f);
  json j = {{"value", tits_form(q, d)}};
  if (!d.isZero()) j["root_type"] = std::string(to_string(root_type(q, d).tag));
  return {j, 0};
}

Outcome cmd_roots(const Flags& f) {
  const Quiver q = load_quiver(f);
  if (!f.dims.empty()) {
    const RootType t = root_type(q, load_dims(q, f));
    return {{{"tag", std::string(to_string(t.tag))}, {"form_value", t.form_value}}, t.tag == RootTag::NotRoot ? 1 : 0};
  }
  if (classify(q).tag == GraphTag::Dynkin) {
    const auto roots = positive_roots(q);
    return {{{"kind", "positive_roots"}, {"count", roots.size()}, {"roots", roots_to_json(q, roots)}}, 0};
  }
  const auto roots = real_roots_up_to(q, f.max_norm);
  return {{{"kind", "real_roots_up_to"}, {"bound", f.max_norm}, {"count", roots.size()}, {"roots", roots_to_json(q, roots)}},
          0};
}

Outcome cmd_delta(const Flags& f) {
  const Quiver q = load_quiver(f);
  return {{{"delta", io::dims_to_json(q, minimal_imaginary_root(q))}}, 0};
}

Outcome cmd_traces(const Flags& f) {
  const Quiver q = load_quiver(f);
  const TraceSystem t = edge_trace_system(q, load_dims(q, f), load_chi(q, f));
  return {io::to_json(q, t), t.feasible ? 0 : 1};
}

Outcome cmd_solve(const Flags& f) {
  const Quiver q = load_quiver(f);
  SolveOptions opt;
  opt.seed = f.seed;
  opt.restarts = f.restarts;
  opt.max_iter = f.max_iter;
  opt.tol = f.tol;
  const SolveResult r = solve(q, load_dims(q, f), load_chi(q, f), opt);
  if (r.status == SolveStatus::Solved && !f.out.empty()) io::write_json(f.out, io::to_json(*r.representation));
  return {io::to_json(r), r.status == SolveStatus::Solved ? 0 : 1};
}

Outcome cmd_check(const Flags& f) {
  const Representation rep = load_rep(f.rep);
  const OrthoscalarReport r = check_orthoscalar(rep, load_chi(rep.quiver(), f), f.tol);
  return {io::to_json(rep.quiver(), r), r.pass ? 0 : 1};
}

Outcome cmd_infer_chi(const Flags& f) {
  const Representation rep = load_rep(f.rep);
  return {io::to_json(rep.quiver(), infer_character(rep)), 0};
}

Outcome cmd_indec(const Flags& f) {
  const Representation rep = load_rep(f.rep);
  const RankDecision r = commutant_rank(rep, f.rank_tol);
  const bool indecomposable = r.nullity() == 1;
  return {{{"commutant_dimension", r.nullity()},
           {"indecomposable", indecomposable},
           {"faithful", is_faithful(rep)},
           {"gap", r.gap}},
          indecomposable ? 0 : 1};
}

Outcome cmd_equiv(const Flags& f) {
  const EquivalenceResult r = unitary_equivalent(load_rep(f.rep_a), load_rep(f.rep_b), f.tol, f.rank_tol);
  json j = {{"equivalent", r.equivalent}, {"residual", r.residual}, {"intertwiner_dimension", r.intertwiner_dimension}};
  return {j, r.equivalent ? 0 : 1};
}

Outcome cmd_coxeter(const Flags& f) {
  const Representation rep = load_rep(f.rep);
  const FunctorResult r = coxeter_functor(rep, load_chi(rep.quiver(), f), parse_parity(f.parity));
  const Quiver& q = r.representation.quiver();
  if (!f.out.empty()) io::write_json(f.out, io::to_json(r.representation));
  const OrthoscalarReport check = check_orthoscalar(r.representation, r.character, f.tol);
  return {{{"dims", io::dims_to_json(q, r.representation.dims())},
           {"chi", io::character_to_json(q, r.character)},
           {"max_defect", check.max_defect},
           {"representation", io::to_json(r.representation)}},
          0};
}

Outcome cmd_construct(const Flags& f) {
  if (f.via == "solver") return cmd_solve(f);
  const Quiver q = load_quiver(f);
  const DimVector d = load_dims(q, f);
  const Character chi = load_chi(q, f);
  const Construction c = construct_via_functors(q, d, chi, f.depth);
  if (!f.out.empty()) io::write_json(f.out, io::to_json(c.representation));
  json chain = json::array();
  for (Parity p : c.chain) chain.push_back(std::string(to_string(p)));
  return {{{"start_vertex", q.vertex(c.start_vertex)},
           {"chain", chain},
           {"max_defect", check_orthoscalar(c.representation, chi, f.tol).max_defect},
           {"representation", io::to_json(c.representation)}},
          0};
}

Outcome cmd_moduli(const Flags& f) {
  const Representation rep = load_rep(f.rep);
  return {io::to_json(parameter_count(rep, load_chi(rep.quiver(), f), f.rank_tol)), 0};
}

Outcome cmd_gradcheck(const Flags& f) {
  double worst = 0.0;
  json samples = json::array();
  if (!f.rep.empty()) {
    const Representation rep = load_rep(f.rep);
    worst = gradient_check(rep, load_chi(rep.quiver(), f));
    samples.push_back(worst);
  } else {
    const Quiver q = load_quiver(f);
    const DimVector d = load_dims(q, f);
    const Character chi = load_chi(q, f);
    for (int k = 0; k < f.samples; ++k) {
      const double e = gradient_check(random_representation(q, d, f.seed + static_cast<std::uint64_t>(k), f.scale), chi);
      samples.push_back(e);
      worst = std::max(worst, e);
    }
  }
  const bool ok = worst < 1e-6;
  return {{{"max_relative_error", worst}, {"samples", samples}, {"pass", ok}}, ok ? 0 : 1};
}

Outcome cmd_randrep(const Flags& f) {
  const Quiver q = load_quiver(f);
  const DimVector d = load_dims(q, f);
  std::optional<Character> chi;
  if (!f.chi.empty()) chi = load_chi(q, f);
  const Representation rep = random_representation(q, d, f.seed, f.scale, chi ? &*chi : nullptr);
  const json j = io::to_json(rep);
  if (!f.out.empty()) {
    io::write_json(f.out, j);
    return {{{"written", f.out}}, 0};
  }
  return {j, 0};
}

json error_json(const std::string& code, const std::string& detail) { return {{"error", code}, {"detail", detail}}; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthoscalar representations of tree quivers"};
  app.require_subcommand(1);
  Flags f;
  app.add_flag("--human", f.human, "Human-readable output instead of JSON");

  std::vector<std::pair<CLI::App*, std::function<Outcome(const Flags&)>>> commands;
  auto add = [&](const char* name, const char* help, auto handler) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_flag("--human", f.human, "Human-readable output instead of JSON");
    commands.emplace_back(sub, handler);
    return sub;
  };
  auto quiver = [&](CLI::App* s) { s->add_option("--quiver", f.quiver, "Quiver JSON file")->required(); };
  auto dims = [&](CLI::App* s, bool req = true) {
    auto* o = s->add_option("--dims", f.dims, "Dimension vector JSON file");
    if (req) o->required();
  };
  auto chi = [&](CLI::App* s, bool req = true) {
    auto* o = s->add_option("--chi", f.chi, "Character JSON file");
    if (req) o->required();
  };
  auto rep = [&](CLI::App* s, bool req = true) {
    auto* o = s->add_option("--rep", f.rep, "Representation JSON file");
    if (req) o->required();
  };
  auto tol = [&](CLI::App* s) { s->add_option("--tol", f.tol, "Defect tolerance")->capture_default_str(); };
  auto rank_tol = [&](CLI::App* s) {
    s->add_option("--rank-tol", f.rank_tol, "Relative singular-value threshold")->capture_default_str();
  };
  auto seed = [&](CLI::App* s) { s->add_option("--seed", f.seed, "Random seed")->capture_default_str(); };
  auto outfile = [&](CLI::App* s) { s->add_option("--out", f.out, "Write the representation to this file"); };

  quiver(add("classify", "Dynkin / extended Dynkin / wild classification", cmd_classify));
  {
    auto* s = add("tits", "Tits form value of a dimension vector", cmd_tits);
    quiver(s);
    dims(s);
  }
  {
    auto* s = add("roots", "Positive roots (Dynkin), bounded real roots, or the root type of --dims", cmd_roots);
    quiver(s);
    dims(s, false);
    s->add_option("--max-norm", f.max_norm, "Entry bound for real-root enumeration")->capture_default_str();
  }
  quiver(add("delta", "Minimal imaginary root of an extended Dynkin quiver", cmd_delta));
  {
    auto* s = add("traces", "Solve the traced orthoscalar equations", cmd_traces);
    quiver(s);
    dims(s);
    chi(s);
  }
  {
    auto* s = add("solve", "Numerically construct an orthoscalar representation", cmd_solve);
    quiver(s);
    dims(s);
    chi(s);
    seed(s);
    tol(s);
    s->add_option("--restarts", f.restarts, "Number of random restarts")->capture_default_str();
    s->add_option("--max-iter", f.max_iter, "Iterations per restart")->capture_default_str();
    outfile(s);
  }
  {
    auto* s = add("check", "Check the orthoscalar equations", cmd_check);
    rep(s);
    chi(s);
    tol(s);
  }
  rep(add("infer-chi", "Trace estimate of the character", cmd_infer_chi));
  {
    auto* s = add("indec", "Commutant dimension and indecomposability", cmd_indec);
    rep(s);
    rank_tol(s);
  }
  {
    auto* s = add("equiv", "Unitary equivalence test", cmd_equiv);
    s->add_option("--rep-a", f.rep_a, "First representation")->required();
    s->add_option("--rep-b", f.rep_b, "Second representation")->required();
    tol(s);
    rank_tol(s);
  }
  {
    auto* s = add("coxeter", "Apply the Coxeter reflection functor", cmd_coxeter);
    rep(s);
    chi(s);
    tol(s);
    s->add_option("--parity", f.parity, "even | odd")->required()->check(CLI::IsMember({"even", "odd"}));
    outfile(s);
  }
  {
    auto* s = add("construct", "Construct a real-root representation", cmd_construct);
    quiver(s);
    dims(s);
    chi(s);
    tol(s);
    seed(s);
    s->add_option("--via", f.via, "functors | solver")->capture_default_str()->check(CLI::IsMember({"functors", "solver"}));
    s->add_option("--depth", f.depth, "Maximum functor chain length")->capture_default_str();
    s->add_option("--restarts", f.restarts, "Solver restarts (with --via solver)")->capture_default_str();
    s->add_option("--max-iter", f.max_iter, "Solver iterations (with --via solver)")->capture_default_str();
    outfile(s);
  }
  {
    auto* s = add("moduli", "Local parameter count at a solution", cmd_moduli);
    rep(s);
    chi(s);
    rank_tol(s);
  }
  {
    auto* s = add("gradcheck", "Compare the gradient with finite differences", cmd_gradcheck);
    rep(s, false);
    s->add_option("--quiver", f.quiver, "Quiver JSON file (random points)");
    dims(s, false);
    chi(s);
    seed(s);
    s->add_option("--samples", f.samples, "Random points to test")->capture_default_str();
    s->add_option("--scale", f.scale, "Entry scale of random points")->capture_default_str();
  }
  {
    auto* s = add("randrep", "Random representation", cmd_randrep);
    quiver(s);
    dims(s);
    chi(s, false);
    seed(s);
    s->add_option("--scale", f.scale, "Entry scale")->capture_default_str();
    outfile(s);
  }

  auto emit = [&](const json& j) {
    if (f.human)
      print_human(out, j);
    else
      out << j.dump() << '\n';
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return 0;
    }
    out << error_json("UsageError", e.what()).dump() << '\n';
    return 2;
  }

  try {
    for (auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      if (sub->get_name() == "gradcheck" && f.rep.empty() && (f.quiver.empty() || f.dims.empty()))
        throw Error("UsageError", "gradcheck needs --rep or --quiver with --dims");
      Outcome o = handler(f);
      emit(o.body);
      return o.code;
    }
  } catch (const Error& e) {
    const int code = verdict_errors().count(e.code()) ? 1 : numerical_errors().count(e.code()) ? 3 : 2;
    emit(error_json(e.code(), e.what()));
    return code;
  } catch (const std::exception& e) {
    emit(error_json("InternalError", e.what()));
    return 3;
  }
  return 2;
}

}  // namespace orthoscalar::cli
