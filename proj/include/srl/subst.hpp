#pragma once

#include "srl/action.hpp"

namespace srl {

// Linear substitution: the i-th free occurrence of x (in term order) is
// replaced by the i-th element of the bag. sigma records, per variable of the
// universe, the interleaving permutation from (occurrences-in-s followed by
// occurrences-in-the-bags) to the result's occurrence order.
struct SubstResult {
  ETermPtr term;
  CtxMorph sigma;  // ground permutation
};

SubstResult substitute(const std::vector<std::string>& universe, const ETermPtr& s,
                       const std::string& x, const EBag& bag);

// Simultaneous substitution of several bound names; bags are consumed
// per-occurrence independently. Used by the linear step on multi-binders.
SubstResult substitute_multi(const std::vector<std::string>& universe, const ETermPtr& s,
                             const std::vector<std::pair<std::string, EBag>>& bags);

}  // namespace srl
