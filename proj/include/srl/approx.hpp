#pragma once

#include "srl/eta.hpp"

namespace srl {

// Ordinary untyped lambda-terms.
struct LTerm;
using LTermPtr = std::shared_ptr<const LTerm>;

struct LTerm {
  enum Kind { Var, Lam, App };
  Kind kind;
  std::string name;  // Var subject / Lam binder
  LTermPtr fun, arg;  // App
  LTermPtr body;      // Lam

  static LTermPtr var(std::string name);
  static LTermPtr lam(std::string name, LTermPtr body);
  static LTermPtr app(LTermPtr fun, LTermPtr arg);
};

std::string show_lterm(const LTermPtr& m);
bool lterm_eq(const LTermPtr& a, const LTermPtr& b);  // alpha-equivalence
std::vector<std::string> lterm_free_vars(const LTermPtr& m);
LTermPtr lterm_freshen(const LTermPtr& m);  // distinct binder names

// Capture-avoiding substitution and beta-reduction. Paths: Lam 0 = body,
// App 0 = fun, 1 = argument.
LTermPtr lsubst(const LTermPtr& m, const std::string& x, const LTermPtr& n);
std::vector<std::vector<int>> lbeta_redexes(const LTermPtr& m);
LTermPtr lbeta_step(const LTermPtr& m, const std::vector<int>& pos);

// The approximation relation between raw resource terms and lambda-terms,
// and the coherence relations on terms and types. Binders are matched
// positionally (alpha-insensitive); annotations are ignored.
bool approximates(const TermPtr& s, const LTermPtr& m);
bool coherent(const TermPtr& s, const TermPtr& t);
bool coherent_types(const TypePtr& a, const TypePtr& b);
bool coherent_lists(const TypeList& a, const TypeList& b);

// Fragment checks. Uniform: nonempty bags of pairwise-coherent elements and
// ground annotations; strongly uniform: pairwise-equal bag elements;
// qualitative: a strongly uniform judgment whose context lists carry equal
// strongly uniform types and whose term and conclusion-type bags are
// singletons.
bool is_uniform(const TermPtr& s);
bool is_strongly_uniform(const TermPtr& s);
bool type_strongly_uniform(const TypePtr& a);
bool is_qualitative(const DerivPtr& d);

enum class Flavor { Cartesian, Linear };

// All resource types with at most the given node count, in canonical order.
std::vector<TypePtr> enumerate_types(int bound);

struct Approximant {
  TermPtr term;
  Context ctx;
  DerivPtr deriv;
  int cost;
};

// All well-typed approximants of m over the given free-variable universe
// whose cost is at most the bound. Cost counts derivation nodes plus the
// sizes of the types chosen freely (variable-occurrence types and weakened
// annotation entries), which keeps the enumeration finite. The linear
// flavor restricts annotations to permutations (bags match demand exactly).
std::vector<Approximant> enumerate_approximants(const LTermPtr& m,
                                                const std::vector<std::string>& universe,
                                                int bound, Flavor flavor);

// As above, restricted to approximants of the given conclusion type. The
// demand propagates through the enumeration, so this is much cheaper than
// filtering the full set.
std::vector<Approximant> enumerate_approximants_typed(const LTermPtr& m,
                                                      const std::vector<std::string>& universe,
                                                      const TypePtr& ty, int bound, Flavor flavor);

// Typed enumeration over several conclusion types at once, sharing the
// internal memo tables across demands.
std::vector<Approximant> enumerate_approximants_roots(const LTermPtr& m,
                                                      const std::vector<std::string>& universe,
                                                      const std::vector<TypePtr>& roots,
                                                      int bound, Flavor flavor);

// Node count of a raw term (applications count the bag node too).
int raw_size(const TermPtr& s);

// All annotations of the derivation are permutations.
bool deriv_linear(const DerivPtr& d);

}  // namespace srl
