#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "srl/action.hpp"

using namespace srl;

static TypePtr o() { return Type::atom(); }
static TypePtr arr(TypeList s, TypePtr t) { return Type::arrow(std::move(s), std::move(t)); }

// \z^{id}. q [z,z] : [o,o] -o o over q : <[o,o]-o o>
static ETermPtr planar_v() {
  ETermPtr z1 = ETerm::head("z", {}, {});
  ETermPtr z2 = ETerm::head("z", {}, {});
  ETermPtr body = ETerm::head("q", {{o(), o()}}, {{z1, z2}});
  return ETerm::abs({EBinder{"z", ListMorph::identity({o(), o()}), false}}, body);
}

static Context qctx2() {
  Context g;
  g.entries.emplace_back("q", TypeList{arr({o(), o()}, o())});
  return g;
}

TEST_CASE("identity actions are identities") {
  Context g = qctx2();
  ETermPtr v = planar_v();
  ActionResult a = covariant(g, v, TypeMorph::identity(etype(v)));
  CHECK(eterm_eq(a.term, v));
  CHECK(a.residual.is_identity());
  ActionResult b = contravariant(g, v, CtxMorph::identity(g));
  CHECK(eterm_eq(b.term, v));
  CHECK(b.residual.is_identity());
}

TEST_CASE("covariant abstraction clause composes annotations") {
  // [c_o -o o] : ([o,o]-o o) -> ([o]-o o) maps \z^{id}.q[z,z] to \z^{c_o}.q[z,z]
  Context g = qctx2();
  ETermPtr v = planar_v();
  TypeMorphPtr f = seq_arrow({contraction(o(), 2)});
  ActionResult r = covariant(g, v, f);
  CHECK(type_eq(etype(r.term), arr({o()}, o())));
  REQUIRE(r.term->kind == ETerm::Abs);
  CHECK(list_morph_eq(r.term->binders[0].ann, contraction(o(), 2)));
  CHECK(eterm_eq(r.term->body, v->body));
  CHECK(r.residual.is_identity());
  eta_validate(g, r.term);
}

TEST_CASE("covariant bag clause duplicates elements and contexts") {
  // [<[1,1]; id,id>] <y> = <y,y> with residual duplicating y's entry.
  ETermPtr y = ETerm::head("y", {}, {});
  BagActionResult r = covariant_bag({"y"}, {y}, contraction(o(), 2));
  REQUIRE(r.bag.size() == 2);
  CHECK(r.bag[0]->name == "y");
  CHECK(r.bag[1]->name == "y");
  const ListMorph* comp = r.residual.find("y");
  REQUIRE(comp != nullptr);
  CHECK(comp->is_ground());
  CHECK(comp->alpha.table == std::vector<int>{1, 1});
  REQUIRE(comp->source.size() == 1);
  CHECK(type_eq(comp->source[0], o()));
}

TEST_CASE("contravariant head retyping duplicates the argument") {
  // x [y] with theta = <c_o -o o> at x: becomes x [y,y], y's entry duplicated.
  Context g;
  g.entries.emplace_back("x", TypeList{arr({o()}, o())});
  g.entries.emplace_back("y", TypeList{o()});
  ETermPtr t = ETerm::head("x", {{o()}}, {{ETerm::head("y", {}, {})}});
  eta_validate(g, t);

  CtxMorph theta;
  theta.vars = {"x", "y"};
  theta.comps.push_back(ListMorph{
      {arr({o(), o()}, o())}, IndexMap{1, {1}}, {seq_arrow({contraction(o(), 2)})}});
  theta.comps.push_back(ListMorph::identity({o()}));
  REQUIRE(ctx_eq(theta.target(), g));

  ActionResult r = contravariant(g, t, theta);
  REQUIRE(r.term->kind == ETerm::Head);
  CHECK(r.term->name == "x");
  REQUIRE(r.term->args.size() == 1);
  REQUIRE(r.term->args[0].size() == 2);
  CHECK(r.term->args[0][0]->name == "y");
  CHECK(r.term->args[0][1]->name == "y");
  REQUIRE(r.term->head_ty.size() == 1);
  CHECK(list_eq(r.term->head_ty[0], {o(), o()}));

  const ListMorph* ny = r.residual.find("y");
  REQUIRE(ny != nullptr);
  CHECK(ny->alpha.table == std::vector<int>{1, 1});
  const ListMorph* nx = r.residual.find("x");
  REQUIRE(nx != nullptr);
  CHECK(nx->is_identity());
  eta_validate(r.residual.target(), r.term);
}

TEST_CASE("contravariant under a binder reindexes the annotation") {
  // \z^{id}. q [z,z] with theta retyping q to <[o]-o o> via its left c_o:
  // the two z-occurrences collapse into the single bag of the retyped head.
  Context g = qctx2();
  ETermPtr v = planar_v();
  CtxMorph theta;
  theta.vars = {"q"};
  // piece : ([o]-o o) -> ([o,o]-o o): left must map [o,o] -> [o]... that is a
  // weakening; use left = w{[o,o],2} : [o,o] -> [o].
  ListMorph w = weakening({o(), o()}, 2);
  theta.comps.push_back(
      ListMorph{{arr({o()}, o())}, IndexMap{1, {1}}, {seq_arrow({w})}});
  REQUIRE(ctx_eq(theta.target(), g));
  ActionResult r = contravariant(g, v, theta);
  REQUIRE(r.term->kind == ETerm::Abs);
  // body: q [z] with one z occurrence dropped; annotation becomes the
  // composite of the drop with the identity: a weakening-shaped morphism.
  REQUIRE(r.term->body->args.size() == 1);
  CHECK(r.term->body->args[0].size() == 1);
  CHECK(list_morph_eq(r.term->binders[0].ann, weakening({o(), o()}, 2)));
  eta_validate(r.residual.target(), r.term);
}

TEST_CASE("fresh empty entry is inert") {
  Context g = qctx2();
  g.entries.emplace_back("w", TypeList{});
  ETermPtr v = planar_v();
  ActionResult r = contravariant(g, v, CtxMorph::identity(g));
  CHECK(eterm_eq(r.term, v));
  CHECK(r.residual.is_identity());
}

TEST_CASE("compositionality and interchange") {
  Context g = qctx2();
  ETermPtr v = planar_v();
  TypeMorphPtr f = seq_arrow({contraction(o(), 2)});
  TypeMorphPtr gg = seq_arrow({block_sum(contraction(o(), 2), ListMorph::identity({o()}))});
  // f : [o,o]-o o -> [o]-o o; need g with domain [o]-o o: use a permutation.
  TypeMorphPtr pg = seq_arrow({permutation({o()}, IndexMap{1, {1}})});
  CHECK(compose_check(g, v, f, pg));
  CHECK(compose_check(g, v, TypeMorph::identity(etype(v)), f));
  (void)gg;

  CtxMorph theta;
  theta.vars = {"q"};
  theta.comps.push_back(ListMorph{{arr({o()}, o())}, IndexMap{1, {1}},
                                  {seq_arrow({weakening({o(), o()}, 2)})}});
  CtxMorph eta_m = CtxMorph::identity(theta.source());
  CHECK(compose_check_contra(g, v, theta, eta_m));
  CHECK(interchange_check(g, v, f, theta));
}
