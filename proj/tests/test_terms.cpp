#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "srl/deriv.hpp"

using namespace srl;

static TypePtr o() { return Type::atom(); }
static TypePtr arr(TypeList s, TypePtr t) { return Type::arrow(std::move(s), std::move(t)); }

TEST_CASE("variable axiom") {
  Context g;
  g.entries.emplace_back("x", TypeList{o()});
  DerivPtr d = check(g, Term::var("x"));
  CHECK(d->kind == Deriv::Var);
  CHECK(type_eq(d->ty, o()));
  CHECK(deriv_size(d) == 1);
}

TEST_CASE("contraction-annotated abstraction") {
  // q : <[o]-o [o]-o o> |- \z^{c_o}. q [z] [z] : [o]-o o
  TypePtr qt = arr({o()}, arr({o()}, o()));
  Context g;
  g.entries.emplace_back("q", TypeList{qt});
  TermPtr v = Term::abs(
      "z", contraction(o(), 2),
      Term::app(Term::app(Term::var("q"), {Term::var("z")}), {Term::var("z")}));
  DerivPtr d = check(g, v);
  CHECK(type_eq(d->ty, arr({o()}, o())));
  // Relevance: context of the body lists z twice.
  CHECK(occurrences(v->sub, "z") == 2);
}

TEST_CASE("mixed structural annotation") {
  // |- \x^{alpha}. x [x,x] : <[o,o]-o o, o> -o o with alpha = id (+) c_o
  TypePtr a2 = arr({o(), o()}, o());
  ListMorph alpha = block_sum(ListMorph::identity({a2}), contraction(o(), 2));
  TermPtr t = Term::abs("x", alpha, Term::app(Term::var("x"), {Term::var("x"), Term::var("x")}));
  DerivPtr d = infer_closed(t);
  CHECK(type_eq(d->ty, arr({a2, o()}, o())));
}

TEST_CASE("weakening annotation") {
  // \x^{T_o}. \y. y : [o] -o [o] -o o (x demanded once, never used)
  TermPtr t = Term::abs("x", terminal({o()}),
                        Term::abs("y", ListMorph::identity({o()}), Term::var("y")));
  DerivPtr d = infer_closed(t);
  CHECK(type_eq(d->ty, arr({o()}, arr({o()}, o()))));
}

TEST_CASE("occurrence counting") {
  // w [x [x [y]]] [x [y]]
  TermPtr inner = Term::app(Term::var("x"), {Term::app(Term::var("x"), {Term::var("y")})});
  TermPtr t = Term::app(Term::app(Term::var("w"), {inner}),
                        {Term::app(Term::var("x"), {Term::var("y")})});
  CHECK(occurrences(t, "x") == 3);
  CHECK(occurrences(t, "y") == 2);
  CHECK(occurrences(t, "w") == 1);
  CHECK(occurrences(Term::abs("x", std::nullopt, Term::var("x")), "x") == 0);
}

TEST_CASE("derivation size counts every judgment node") {
  Context g;
  g.entries.emplace_back("x", TypeList{arr({o(), o()}, o())});
  g.entries.emplace_back("y", TypeList{o()});
  g.entries.emplace_back("z", TypeList{o()});
  DerivPtr d = check(g, Term::app(Term::var("x"), {Term::var("y"), Term::var("z")}));
  CHECK(deriv_size(d) == 5);  // app + var + bag + two element axioms
  DerivPtr i = infer_closed(Term::abs("x", ListMorph::identity({o()}), Term::var("x")));
  CHECK(deriv_size(i) == 2);
}

TEST_CASE("checker error codes") {
  Context g;
  g.entries.emplace_back("x", TypeList{o(), o()});
  CHECK_THROWS_AS(check(g, Term::var("x")), CheckError);  // one occurrence for two entries
  try {
    check(g, Term::var("x"));
  } catch (const CheckError& e) {
    CHECK(e.code == "OccurrenceCountMismatch");
  }
  try {
    infer_closed(Term::var("z"));
  } catch (const CheckError& e) {
    CHECK(e.code == "UnboundVariable");
  }
  try {
    // annotation codomain lists two occurrences, body has one
    infer_closed(Term::abs("x", contraction(o(), 2), Term::var("x")));
  } catch (const CheckError& e) {
    CHECK(e.code == "AnnotationMismatch");
  }
}

TEST_CASE("uniqueness and relevance") {
  TypePtr a2 = arr({o(), o()}, o());
  ListMorph alpha = block_sum(ListMorph::identity({a2}), contraction(o(), 2));
  TermPtr t = Term::abs("x", alpha, Term::app(Term::var("x"), {Term::var("x"), Term::var("x")}));
  DerivPtr d1 = infer_closed(t);
  DerivPtr d2 = infer_closed(t);
  CHECK(deriv_eq(d1, d2));
  // Relevance at the body: the bound entry lists the three occurrence types.
  const Deriv* body = d1->kids[0].get();
  const TypeList* xs = body->ctx.find("x");
  REQUIRE(xs != nullptr);
  REQUIRE(xs->size() == 3);
  CHECK(type_eq((*xs)[0], a2));
  CHECK(type_eq((*xs)[1], o()));
  CHECK(type_eq((*xs)[2], o()));
}

TEST_CASE("erase inverts checking") {
  Context g;
  g.entries.emplace_back("q", TypeList{arr({o()}, arr({o()}, o()))});
  TermPtr v = Term::abs(
      "z", contraction(o(), 2),
      Term::app(Term::app(Term::var("q"), {Term::var("z")}), {Term::var("z")}));
  DerivPtr d = check(g, v);
  CHECK(term_eq(erase(d), freshen(v)));
}
