#pragma once

#include "srl/approx.hpp"
#include "srl/rewrite.hpp"

namespace srl {

// ---------------------------------------------------------------------------
// Multitypes: the image of resource types under replacing every list by the
// corresponding multiset. Multisets are kept sorted under mtype_cmp, so
// multiset equality is structural.

struct MType;
using MTypePtr = std::shared_ptr<const MType>;
using MInter = std::vector<MTypePtr>;  // sorted

struct MType {
  bool is_atom;
  MInter source;   // empty for the atom
  MTypePtr target;  // null for the atom

  static const MTypePtr& atom();
  static MTypePtr arrow(MInter source, MTypePtr target);  // sorts the source
};

int mtype_cmp(const MTypePtr& a, const MTypePtr& b);
bool mtype_eq(const MTypePtr& a, const MTypePtr& b);
bool minter_eq(const MInter& a, const MInter& b);
int mtype_size(const MTypePtr& a);  // node count, as for resource types
int minter_size(const MInter& a);
std::string show_mtype(const MTypePtr& a);   // multisets print as {...}
std::string show_minter(const MInter& a);

MTypePtr multi_of_type(const TypePtr& a);
MInter multi_of_list(const TypeList& a);

// ---------------------------------------------------------------------------
// The Scott preorder, generated by [A] <= [A,A], [A1,A2] <= [Ai] and
// [A1,...,Ak] <= [], closed under congruence and reflexivity-transitivity.
// Decision procedure: A <= B iff every element of B is >= some element of A,
// with arrows compared contravariantly on the left.

bool mtype_leq(const MTypePtr& a, const MTypePtr& b);
bool scott_leq(const MInter& a, const MInter& b);

// Brute-force validation of the decision procedure: enumerate every multitype
// of nesting depth <= depth whose sources have width <= width, every multiset
// over them of width <= inter_width, compute the closure of the generating
// rules (duplication, projection, erasure, multiset-union congruence, the
// singleton lifting of the type-level order, arrow congruence, transitivity)
// as a fixpoint, and compare against the decision procedure on every pair.
struct ScottValidation {
  int types = 0;
  int inters = 0;
  bool agree = false;
  std::string counterexample;  // empty when agree
};
ScottValidation validate_scott(int depth, int width, int inter_width);

// ---------------------------------------------------------------------------
// Multitype semantics via approximants.

// A pair (context, type) over a fixed universe of free variables.
struct Judgment {
  std::vector<MInter> ctx;  // aligned with the universe
  MTypePtr ty;
};

int judgment_cmp(const Judgment& a, const Judgment& b);
bool judgment_eq(const Judgment& a, const Judgment& b);
int judgment_size(const Judgment& j);  // node count of the multitype pair
std::string show_judgment(const std::vector<std::string>& universe, const Judgment& j);

Judgment judgment_of(const std::vector<std::string>& universe, const Context& ctx,
                     const TypePtr& ty);

// { (ctx, ty) of s | s approximates m, cost(s) <= bound }, sorted and
// deduplicated. Cartesian approximants give the scott semantics, linear ones
// the rel semantics.
std::vector<Judgment> semantics(const LTermPtr& m, const std::vector<std::string>& universe,
                                int bound, Flavor flavor);

// ---------------------------------------------------------------------------
// The proof-relevant collapse: exponential normalization of a cartesian
// approximant, repackaged with its composite label theta : ctx -> end_ctx and
// f : end_ty -> ty.

struct CollapseRecord {
  Approximant source;
  ETermPtr source_eta;
  ETermPtr normal;  // planar exponential normal form
  Context end_ctx;
  TypePtr end_ty;
  ReductionLabel label;
  int steps = 0;
};

CollapseRecord collapse_map(const Approximant& s);

// ---------------------------------------------------------------------------
// Bounded verification of the collapse theorem: restricted to judgments of
// size <= bound, with witnesses enumerated up to witness_bound (defaulting to
// the judgment bound when negative),
//   (<=) every scott judgment, through the collapse of its witness, sits
//        scott-below a rel judgment: ctx <= end_ctx and end_ty <= ty, the
//        normal form is planar, types linearly and still approximates m;
//   (>=) every rel judgment is literally a scott judgment.

struct CollapseReport {
  bool ok = false;
  int judgment_bound = 0;
  int witness_bound = 0;
  int scott_count = 0;
  int rel_count = 0;
  int checked = 0;           // scott judgments within the judgment bound
  std::vector<std::string> lines;  // one line per checked judgment, sorted
  std::string counterexample;      // empty when ok
};

CollapseReport verify_collapse(const LTermPtr& m, const std::vector<std::string>& universe,
                               int bound, int witness_bound = -1);

}  // namespace srl
