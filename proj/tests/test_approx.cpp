#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "srl/approx.hpp"

using namespace srl;

namespace {

ListMorph contraction2(const TypePtr& a) {
  return ListMorph::ground({a}, IndexMap{1, {1, 1}});
}

}  // namespace

TEST_CASE("approximation relation") {
  LTermPtr x = LTerm::var("x");
  CHECK(approximates(Term::var("x"), x));
  CHECK_FALSE(approximates(Term::var("y"), x));

  // \z^{c_o}. q<z><z>  approximates  \z. q z z
  TermPtr s = Term::abs(
      "z", contraction2(Type::atom()),
      Term::app(Term::app(Term::var("q"), {Term::var("z")}), {Term::var("z")}));
  LTermPtr m = LTerm::lam(
      "z", LTerm::app(LTerm::app(LTerm::var("q"), LTerm::var("z")), LTerm::var("z")));
  CHECK(approximates(s, m));
  // alpha-insensitive on the lambda side
  LTermPtr m2 = LTerm::lam(
      "w", LTerm::app(LTerm::app(LTerm::var("q"), LTerm::var("w")), LTerm::var("w")));
  CHECK(approximates(s, m2));

  CHECK_FALSE(approximates(Term::app(Term::var("x"), {Term::var("y")}),
                           LTerm::lam("z", LTerm::var("z"))));

  // bags approximate the argument pointwise, any width
  TermPtr wide = Term::app(Term::var("q"), {});
  CHECK(approximates(wide, LTerm::app(LTerm::var("q"), LTerm::var("y"))));
  TermPtr two = Term::app(Term::var("q"), {Term::var("y"), Term::var("y")});
  CHECK(approximates(two, LTerm::app(LTerm::var("q"), LTerm::var("y"))));
  CHECK_FALSE(approximates(Term::app(Term::var("q"), {Term::var("z")}),
                           LTerm::app(LTerm::var("q"), LTerm::var("y"))));
}

TEST_CASE("coherence on terms and types") {
  CHECK(coherent(Term::var("x"), Term::var("x")));
  CHECK_FALSE(coherent(Term::var("x"), Term::var("y")));
  // different widths are coherent when elements are pairwise coherent
  TermPtr a = Term::app(Term::var("q"), {Term::var("y")});
  TermPtr b = Term::app(Term::var("q"), {Term::var("y"), Term::var("y")});
  CHECK(coherent(a, b));
  CHECK_FALSE(coherent(a, Term::app(Term::var("q"), {Term::var("z")})));
  // annotations are ignored
  TermPtr l1 = Term::abs("x", ListMorph::identity({Type::atom()}), Term::var("x"));
  TermPtr l2 = Term::abs("x", contraction2(Type::atom()),
                         Term::app(Term::var("x"), {}));
  CHECK_FALSE(coherent(l1, l2));  // bodies x vs x<> differ in shape
  TermPtr l3 = Term::abs("w", contraction2(Type::atom()), Term::var("w"));
  CHECK(coherent(l1, l3));

  TypePtr o = Type::atom();
  CHECK(coherent_types(o, o));
  CHECK(coherent_types(Type::arrow({o}, o), Type::arrow({o, o}, o)));
  CHECK_FALSE(coherent_types(o, Type::arrow({o}, o)));
  CHECK(coherent_lists({}, {o}));
  CHECK_FALSE(coherent_types(Type::arrow({o}, o), Type::arrow({Type::arrow({}, o)}, o)));
}

TEST_CASE("uniform and strongly uniform fragments") {
  TypePtr o = Type::atom();
  // <x, \y.y> is not uniform: elements incoherent
  TermPtr lam_id = Term::abs("y", ListMorph::identity({o}), Term::var("y"));
  TermPtr bad = Term::app(Term::var("q"), {Term::var("x"), lam_id});
  CHECK_FALSE(is_uniform(bad));
  // empty bags are excluded
  CHECK_FALSE(is_uniform(Term::app(Term::var("q"), {})));
  // uniform but not strongly uniform: coherent, unequal elements
  TermPtr e1 = Term::app(Term::var("q"), {Term::var("y")});
  TermPtr e2 = Term::app(Term::var("q"), {Term::var("y"), Term::var("y")});
  TermPtr u = Term::app(Term::var("p"), {e1, e2});
  CHECK(is_uniform(u));
  CHECK_FALSE(is_strongly_uniform(u));
  TermPtr su = Term::app(Term::var("p"), {e1, e1});
  CHECK(is_strongly_uniform(su));
  // non-ground annotations break uniformity
  ListMorph nested;
  nested.source = {Type::arrow({o}, o)};
  nested.alpha = IndexMap{1, {1}};
  nested.nested = {TypeMorph::arrow(contraction2(o), TypeMorph::atom())};
  TermPtr ng = Term::abs("x", nested, Term::app(Term::var("x"), {Term::var("z")}));
  CHECK_FALSE(is_uniform(ng));
}

TEST_CASE("qualitative judgments") {
  TypePtr o = Type::atom();
  // |- \x.x : <o> -o o
  TermPtr id_term = Term::abs("x", ListMorph::identity({o}), Term::var("x"));
  CHECK(is_qualitative(infer_closed(id_term)));
  // duplicated context entry with equal types stays qualitative
  TermPtr dup = Term::abs("x", contraction2(o),
                          Term::app(Term::app(Term::var("q"), {Term::var("x")}),
                                    {Term::var("x")}));
  TypePtr qa = Type::arrow({o}, Type::arrow({o}, o));
  Context gamma;
  gamma.entries = {{"q", {qa}}};
  CHECK(is_qualitative(check(gamma, dup)));
  // non-singleton term bag: strongly uniform but not qualitative
  TermPtr wide = Term::abs("x", contraction2(o),
                           Term::app(Term::var("q"), {Term::var("x"), Term::var("x")}));
  Context g2;
  g2.entries = {{"q", {Type::arrow({o, o}, o)}}};
  DerivPtr d2 = check(g2, wide);
  CHECK(is_strongly_uniform(erase(d2)));
  CHECK_FALSE(is_qualitative(d2));
}

TEST_CASE("lambda-term beta") {
  LTermPtr redex = LTerm::app(LTerm::lam("x", LTerm::var("x")), LTerm::var("y"));
  CHECK(lterm_eq(lbeta_step(redex, {}), LTerm::var("y")));
  CHECK(lbeta_redexes(redex).size() == 1);
  // capture avoidance: (\x.\y. x y) y  ->  \y'. y y'
  LTermPtr m = LTerm::app(
      LTerm::lam("x", LTerm::lam("y", LTerm::app(LTerm::var("x"), LTerm::var("y")))),
      LTerm::var("y"));
  LTermPtr n = lbeta_step(m, {});
  CHECK(lterm_eq(n, LTerm::lam("z", LTerm::app(LTerm::var("y"), LTerm::var("z")))));
}

TEST_CASE("approximant enumeration: identity") {
  LTermPtr m = LTerm::lam("x", LTerm::var("x"));
  auto cart = enumerate_approximants(m, {}, 6, Flavor::Cartesian);
  CHECK(!cart.empty());
  bool found = false;
  TypePtr want = Type::arrow({Type::atom()}, Type::atom());
  for (const auto& a : cart) {
    CHECK(approximates(a.term, m));
    if (type_eq(a.deriv->ty, want)) found = true;
  }
  CHECK(found);
  CHECK(enumerate_approximants(m, {}, 0, Flavor::Cartesian).empty());
  auto lin = enumerate_approximants(m, {}, 6, Flavor::Linear);
  CHECK(!lin.empty());
  for (const auto& a : lin) CHECK(deriv_linear(a.deriv));
  // linear approximants form a subset of the cartesian ones
  for (const auto& a : lin) {
    bool in = false;
    for (const auto& b : cart)
      if (term_eq(freshen(a.term), freshen(b.term))) in = true;
    CHECK(in);
  }
}

TEST_CASE("approximant pairs: coherence iff same lambda-term") {
  LTermPtr m = LTerm::lam("z", LTerm::app(LTerm::var("q"), LTerm::var("z")));
  auto apx = enumerate_approximants(m, {"q"}, 12, Flavor::Cartesian);
  CHECK(apx.size() > 1);
  for (const auto& a : apx)
    for (const auto& b : apx) CHECK(coherent(a.term, b.term));
  // an approximant of a different term is incoherent with all of them
  TermPtr other = Term::abs("z", ListMorph::ground({}, IndexMap{0, {}}),
                            Term::app(Term::var("p"), {}));
  for (const auto& a : apx) CHECK_FALSE(coherent(a.term, other));
}

TEST_CASE("weakening enumeration reaches terminal annotations") {
  LTermPtr k = LTerm::lam("x", LTerm::lam("y", LTerm::var("x")));
  auto apx = enumerate_approximants(k, {}, 8, Flavor::Cartesian);
  bool weak = false;
  for (const auto& a : apx) {
    if (a.term->kind != Term::Abs) continue;
    const TermPtr& inner = a.term->sub;
    if (inner->kind == Term::Abs && inner->ann && !inner->ann->source.empty() &&
        inner->ann->alpha.table.empty())
      weak = true;
  }
  CHECK(weak);
}
