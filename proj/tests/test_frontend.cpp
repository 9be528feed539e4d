#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "srl/frontend.hpp"

using namespace srl;

namespace {

STypePtr star() { return SType::star(); }
STypePtr sarrow(STypePtr a, STypePtr b) { return SType::arrow(std::move(a), std::move(b)); }

void check_simple_sim(const SCtx& gamma, const STermPtr& m) {
  STermPtr cur = m;
  int guard = 0;
  while (true) {
    auto redexes = sbeta_redexes(cur);
    if (redexes.empty()) break;
    for (const auto& pos : redexes) {
      SimulationReport rep = simulate_beta_simple(gamma, cur, pos);
      INFO(show_sterm(cur), " at step ", guard, " diff: ", rep.diff);
      CHECK(rep.on_the_nose);
      CHECK(rep.cart_equation);
      CHECK(!rep.steps.empty());
    }
    cur = sbeta_step(cur, redexes[0]);
    REQUIRE(++guard < 40);
  }
}

}  // namespace

TEST_CASE("simple type checking") {
  auto a = star();
  auto id = STerm::lam("x", a, STerm::var("x"));
  CHECK(stype_eq(check_simple({}, id), sarrow(a, a)));

  SCtx gamma = {{"f", sarrow(a, a)}, {"z", a}};
  auto app = STerm::app(STerm::var("f"), STerm::var("z"));
  CHECK(stype_eq(check_simple(gamma, app), a));

  CHECK_THROWS_AS(check_simple({}, STerm::var("x")), CheckError);
  CHECK_THROWS_AS(check_simple(gamma, STerm::app(STerm::var("z"), STerm::var("z"))),
                  CheckError);
  auto bad = STerm::app(STerm::var("f"), STerm::var("f"));
  CHECK_THROWS_AS(check_simple(gamma, bad), CheckError);
}

TEST_CASE("simple beta steps") {
  auto a = star();
  SCtx gamma = {{"b", a}, {"c", a}};
  auto k = STerm::lam("x", a, STerm::lam("y", a, STerm::var("x")));
  auto m = STerm::app(STerm::app(k, STerm::var("b")), STerm::var("c"));
  auto redexes = sbeta_redexes(m);
  REQUIRE(redexes.size() == 1);
  auto n = sbeta_step(m, redexes[0]);
  CHECK(show_sterm(n) == "(\\y:*. b) c");
  n = sbeta_step(n, sbeta_redexes(n)[0]);
  CHECK(show_sterm(n) == "b");
}

TEST_CASE("simple embedding shapes") {
  auto a = star();
  // \x.\y. x : the first binder is cart^1 = id, the second cart^0 = terminal.
  auto k = STerm::lam("x", a, STerm::lam("y", a, STerm::var("x")));
  Embedding e = embed_simple({}, k);
  CHECK(show_term(e.term) == "\\x^{id@[o]}. \\y^{<[];>}. x");
  CHECK(is_qualitative(e.deriv));
  CHECK(is_uniform(e.term));
  CHECK(approximates(e.term, strip(k)));

  // \f.\x. f (f x) : the duplicated head gets cart^2.
  auto c2 = STerm::lam(
      "f", sarrow(a, a),
      STerm::lam("x", a,
                 STerm::app(STerm::var("f"), STerm::app(STerm::var("f"), STerm::var("x")))));
  Embedding e2 = embed_simple({}, c2);
  CHECK(show_term(e2.term) ==
        "\\f^{<[1,1]; id@[o] -o o,id@[o] -o o>}. \\x^{id@[o]}. f [f [x]]");
  CHECK(is_qualitative(e2.deriv));

  // Contexts list one copy of the translated type per free occurrence.
  SCtx gamma = {{"y", a}};
  auto m = STerm::app(STerm::lam("x", a, STerm::var("y")), STerm::var("y"));
  Embedding e3 = embed_simple(gamma, m);
  REQUIRE(e3.ctx.entries.size() == 1);
  CHECK(e3.ctx.entries[0].second.size() == 2);
}

TEST_CASE("qualitative round trip") {
  auto a = star();
  SCtx gamma = {{"w", sarrow(a, sarrow(sarrow(a, a), a))}, {"y", a}};
  auto m = STerm::app(STerm::app(STerm::var("w"), STerm::var("y")),
                      STerm::lam("x", a, STerm::var("x")));
  Embedding e = embed_simple(gamma, m);
  SimpleTyping back = qualitative_to_simple(e.deriv);
  CHECK(stype_eq(back.ty, check_simple(gamma, m)));
  CHECK(lterm_eq(strip(back.term), strip(m)));
  for (size_t i = 0; i < gamma.size(); ++i) {
    CHECK(back.ctx[i].first == gamma[i].first);
    CHECK(stype_eq(back.ctx[i].second, gamma[i].second));
  }
}

TEST_CASE("simple simulation over the corpus") {
  for (const CorpusEntry& c : simple_corpus()) {
    INFO(c.name);
    Embedding e = embed_simple(c.ctx, c.term);
    CHECK(is_qualitative(e.deriv));
    CHECK(approximates(e.term, strip(c.term)));
    check_simple_sim(c.ctx, c.term);
  }
}

TEST_CASE("erasing redex uses a weakening label") {
  auto a = star();
  SCtx gamma = {{"b", a}, {"c", a}};
  auto k = STerm::lam("x", a, STerm::lam("y", a, STerm::var("x")));
  auto m = STerm::app(STerm::app(k, STerm::var("b")), STerm::var("c"));
  // Reduce the outer application first so the next redex erases c.
  auto n = sbeta_step(m, sbeta_redexes(m)[0]);
  SimulationReport rep = simulate_beta_simple(gamma, n, sbeta_redexes(n)[0]);
  CHECK(rep.on_the_nose);
  bool has_exp = false, has_lin = false;
  for (const Step& s : rep.steps) {
    if (s.kind == StepKind::Exponential) has_exp = true;
    if (s.kind == StepKind::Linear) has_lin = true;
  }
  CHECK(has_exp);
  CHECK(has_lin);
  REQUIRE(rep.target.ctx.entries.size() == 2);
  CHECK(rep.target.ctx.entries[1].second.empty());  // no occurrences of c remain
}

TEST_CASE("intersection types and derivations") {
  auto o = IType::atom();
  auto t1 = IType::arrow(make_inter({o}), o);
  auto t2 = IType::arrow(make_inter({t1}), t1);
  CHECK(itype_cmp(o, t1) < 0);
  CHECK(itype_cmp(t1, t2) < 0);
  CHECK(iinter_eq(make_inter({t2, t1, t1}), make_inter({t1, t2})));
  CHECK_THROWS_AS(make_inter({}), CheckError);

  // x : t2 /\ t1 |- x x : t1, so \x. x x : <t1 /\ t2> -> t1.
  ICtx ctx = {{"x", make_inter({t1, t2})}};
  auto fun_var = IDeriv::var(ctx, "x", t2);
  auto arg_var = IDeriv::var(ctx, "x", t1);
  auto self = IDeriv::app(fun_var, IDeriv::inter({arg_var}));
  auto delta = IDeriv::lam("x", self);
  check_idem(delta);
  CHECK(itype_eq(delta->ty, IType::arrow(make_inter({t1, t2}), t1)));

  CHECK_THROWS_AS(IDeriv::var(ctx, "x", IType::arrow(make_inter({o}), t1)), CheckError);
  CHECK_THROWS_AS(IDeriv::app(fun_var, IDeriv::inter({fun_var})), CheckError);
}

namespace {

// (\x. x x) (\y. y) with x : t2 /\ t1, where t1 = <o> -> o, t2 = <t1> -> t1.
IDerivPtr delta_id_deriv() {
  auto o = IType::atom();
  auto t1 = IType::arrow(make_inter({o}), o);
  auto t2 = IType::arrow(make_inter({t1}), t1);
  ICtx xctx = {{"x", make_inter({t1, t2})}};
  auto delta = IDeriv::lam(
      "x", IDeriv::app(IDeriv::var(xctx, "x", t2),
                       IDeriv::inter({IDeriv::var(xctx, "x", t1)})));
  auto id_at1 = IDeriv::lam("y", IDeriv::var({{"y", make_inter({o})}}, "y", o));
  auto id_at2 = IDeriv::lam("y", IDeriv::var({{"y", make_inter({t1})}}, "y", t1));
  return IDeriv::app(delta, IDeriv::inter({id_at1, id_at2}));
}

}  // namespace

TEST_CASE("intersection subject reduction") {
  IDerivPtr d = delta_id_deriv();
  check_idem(d);
  IDerivPtr r = ideriv_beta(d, {});
  check_idem(r);
  CHECK(r->kind == IDeriv::App);
  CHECK(itype_eq(r->ty, d->ty));
  IDerivPtr r2 = ideriv_beta(r, {});
  check_idem(r2);
  CHECK(r2->kind == IDeriv::Lam);
  CHECK(itype_eq(r2->ty, d->ty));
}

TEST_CASE("intersection embedding and simulation") {
  IDerivPtr d = delta_id_deriv();
  Embedding e = embed_intersection(d);
  CHECK(is_uniform(e.term));
  eta_validate(e.ctx, e.eterm);

  SimulationReport rep = simulate_beta_inter(d, {});
  INFO(rep.diff);
  CHECK(rep.isomorphic);
  CHECK(!rep.steps.empty());

  IDerivPtr r = ideriv_beta(d, {});
  SimulationReport rep2 = simulate_beta_inter(r, {});
  INFO(rep2.diff);
  CHECK(rep2.isomorphic);
}

TEST_CASE("intersection redex duplicated across members") {
  auto o = IType::atom();
  auto t1 = IType::arrow(make_inter({o}), o);
  auto t2 = IType::arrow(make_inter({t1}), t1);
  // (\x. x x) ((\w. w) v) with v : t2 /\ t1: the argument redex is embedded
  // once per intersection member, so one lambda-term step maps to two
  // resource positions.
  ICtx base = {{"v", make_inter({t1, t2})}};
  ICtx xctx = base;
  xctx.push_back({"x", make_inter({t1, t2})});
  auto delta = IDeriv::lam(
      "x", IDeriv::app(IDeriv::var(xctx, "x", t2),
                       IDeriv::inter({IDeriv::var(xctx, "x", t1)})));
  auto arg_at = [&](const ITypePtr& t) {
    ICtx wctx = base;
    wctx.push_back({"w", make_inter({t})});
    auto idw = IDeriv::lam("w", IDeriv::var(wctx, "w", t));
    return IDeriv::app(idw, IDeriv::inter({IDeriv::var(base, "v", t)}));
  };
  auto d = IDeriv::app(delta, IDeriv::inter({arg_at(t1), arg_at(t2)}));
  check_idem(d);

  Embedding e = embed_intersection(d);
  auto mapped = map_beta_path(e.eterm, d->term, {1});
  CHECK(mapped.size() == 2);

  SimulationReport rep = simulate_beta_inter(d, {1});
  INFO(rep.diff);
  CHECK(rep.isomorphic);
  SimulationReport rep0 = simulate_beta_inter(d, {});
  INFO(rep0.diff);
  CHECK(rep0.isomorphic);
}

TEST_CASE("singleton intersections agree with the simple embedding") {
  for (const CorpusEntry& c : simple_corpus()) {
    INFO(c.name);
    Embedding es = embed_simple(c.ctx, c.term);
    IDerivPtr d = simple_to_idem(c.ctx, sfreshen(c.term));
    check_idem(d);
    Embedding ei = embed_intersection(d);
    CHECK(eterm_alpha_eq(es.eterm, ei.eterm));
    CHECK(ctx_eq(es.ctx, ei.ctx));
    for (const auto& pos : sbeta_redexes(c.term)) {
      SimulationReport rep = simulate_beta_inter(d, pos);
      INFO(rep.diff);
      CHECK(rep.isomorphic);
    }
  }
}
