#pragma once

#include <cstdint>
#include <optional>

#include "srl/subst.hpp"

namespace srl {

// A step label (theta; f): theta maps the source context to the target
// context, while f maps the *target* type back to the source type.
struct ReductionLabel {
  CtxMorph ctx;
  TypeMorphPtr typ;
};

// l2 after l1: contexts compose forwards, type morphisms backwards.
ReductionLabel label_compose(const ReductionLabel& l2, const ReductionLabel& l1);
ReductionLabel label_identity(const Context& gamma, const TypePtr& a);
bool label_eq(const ReductionLabel& a, const ReductionLabel& b);
std::string show_label(const ReductionLabel& l);

enum class StepKind { Exponential, Linear };

// Position paths: at an abstraction 0 descends to the body; at a redex 0 is
// the function, k >= 1 selects argument bag k (then the next entry selects the
// element); at a head application k >= 1 selects bag k likewise.
using Path = std::vector<int>;

struct Step {
  StepKind kind;
  Path position;
  ReductionLabel label;
  ETermPtr result;
};

// All redex positions in leftmost-outermost (preorder) order.
std::vector<std::pair<Path, StepKind>> find_redexes(const ETermPtr& t);

// Ground steps at the root. The partial variants touch only the first
// `levels` binder groups of the abstraction/redex (matching the one-binder
// steps of the un-merged presentation); levels = 0 means all of them.
Step exp_ground_step(const Context& gamma, const ETermPtr& t, size_t levels = 0);
Step lin_ground_step(const Context& gamma, const ETermPtr& t, size_t levels = 0);

// Contextual closure: perform the ground step of the given kind at the given
// position and propagate the label outwards.
Step step_closure(const Context& gamma, const ETermPtr& t, const Path& pos, StepKind kind,
                  size_t levels = 0);

enum class Strategy { LeftmostOutermost, ExponentialFirst, LinearFirst, Random };

enum class StepFilter { Both, ExpOnly, LinOnly };

struct NormalizeResult {
  ETermPtr term;
  ReductionLabel label;
  std::vector<Step> trace;
};

NormalizeResult normalize(const Context& gamma, const ETermPtr& t,
                          Strategy strat = Strategy::LeftmostOutermost,
                          std::uint64_t seed = 0, long budget = 1000000,
                          StepFilter filter = StepFilter::Both);
NormalizeResult exp_normalize(const Context& gamma, const ETermPtr& t);
NormalizeResult lin_normalize(const Context& gamma, const ETermPtr& t);

bool is_planar(const ETermPtr& t);

// Isomorphism of terms over the same forced context: identical skeletons with
// binder annotations differing by type-preserving permutations. Returns the
// witness context permutation (the identity, since contexts are forced by
// occurrence order) when related.
std::optional<CtxMorph> iso(const Context& gamma, const ETermPtr& a, const ETermPtr& b);

// Join a peak t1 <- s -> t2 by exhaustively exploring both reduction graphs;
// on success returns the common reduct and the two composite labels from s.
struct JoinResult {
  ETermPtr meet;
  ReductionLabel label1;
  ReductionLabel label2;
};
std::optional<JoinResult> join_peak(const Context& gamma, const ETermPtr& s,
                                    const Step& s1, const Step& s2, long budget = 100000);

}  // namespace srl
