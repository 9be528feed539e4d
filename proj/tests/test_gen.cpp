#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "srl/gen.hpp"

using namespace srl;

TEST_CASE("random terms validate") {
  Rng rng(7);
  GenConfig cfg;
  for (int i = 0; i < 300; ++i) {
    GenTerm g = rand_term(rng, cfg);
    CHECK_NOTHROW(eta_validate(g.ctx, g.term));
  }
}

TEST_CASE("random linear terms validate and are linear") {
  Rng rng(11);
  GenConfig cfg;
  cfg.linear = true;
  for (int i = 0; i < 200; ++i) {
    GenTerm g = rand_term(rng, cfg);
    CHECK_NOTHROW(eta_validate(g.ctx, g.term));
    CHECK(linear_typed(g.term));
  }
}

TEST_CASE("terms of a demanded type") {
  Rng rng(3);
  GenConfig cfg;
  std::vector<std::string> pool = {"u1", "u2"};
  for (int i = 0; i < 200; ++i) {
    TypePtr a = rand_type(rng, cfg, 2);
    ETermPtr t = rand_eterm_of(rng, cfg, pool, a, 2);
    CHECK(type_eq(etype(t), a));
    Context gamma = ectx(t, pool);
    CHECK_NOTHROW(eta_validate(gamma, t));
  }
}

TEST_CASE("random morphisms have the demanded boundary") {
  Rng rng(5);
  GenConfig cfg;
  for (int i = 0; i < 200; ++i) {
    TypePtr a = rand_type(rng, cfg, 2);
    CHECK(type_eq(rand_type_morph_from(rng, cfg, a, 2)->domain(), a));
    CHECK(type_eq(rand_type_morph_to(rng, cfg, a, 2)->codomain(), a));
    TypeList l = rand_type_list(rng, cfg, 2);
    CHECK(list_eq(rand_list_morph_from(rng, cfg, l, 2).source, l));
    CHECK(list_eq(rand_list_morph_to(rng, cfg, l, 2).target(), l));
  }
}

TEST_CASE("generated terms normalize within budget") {
  Rng rng(19);
  GenConfig cfg;
  cfg.max_depth = 2;
  for (int i = 0; i < 100; ++i) {
    GenTerm g = rand_term(rng, cfg);
    if (esize(g.ctx, g.term) > 25) continue;
    NormalizeResult r = normalize(g.ctx, g.term);
    CHECK(find_redexes(r.term).empty());
  }
}
