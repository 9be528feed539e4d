#include "srl/context.hpp"

#include <sstream>
#include <stdexcept>

namespace srl {

const TypeList* Context::find(const std::string& x) const {
  for (auto& e : entries)
    if (e.first == x) return &e.second;
  return nullptr;
}

bool Context::has_var(const std::string& x) const { return find(x) != nullptr; }

bool ctx_eq(const Context& a, const Context& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].first != b.entries[i].first) return false;
    if (!list_eq(a.entries[i].second, b.entries[i].second)) return false;
  }
  return true;
}

std::string show_ctx(const Context& a) {
  std::ostringstream out;
  bool first = true;
  for (auto& e : a.entries) {
    if (!first) out << ", ";
    first = false;
    out << e.first << " : " << show_list(e.second);
  }
  return out.str();
}

Context ctx_tensor(const Context& a, const Context& b) {
  if (a.entries.size() != b.entries.size())
    throw std::runtime_error("context tensor: variable universes differ");
  Context out;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].first != b.entries[i].first)
      throw std::runtime_error("context tensor: variable universes differ");
    TypeList l = a.entries[i].second;
    l.insert(l.end(), b.entries[i].second.begin(), b.entries[i].second.end());
    out.entries.emplace_back(a.entries[i].first, std::move(l));
  }
  return out;
}

Context CtxMorph::source() const {
  Context g;
  for (size_t i = 0; i < vars.size(); ++i) g.entries.emplace_back(vars[i], comps[i].source);
  return g;
}

Context CtxMorph::target() const {
  Context g;
  for (size_t i = 0; i < vars.size(); ++i) g.entries.emplace_back(vars[i], comps[i].target());
  return g;
}

const ListMorph* CtxMorph::find(const std::string& x) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == x) return &comps[i];
  return nullptr;
}

bool CtxMorph::is_identity() const {
  for (auto& c : comps)
    if (!c.is_identity()) return false;
  return true;
}

bool CtxMorph::is_ground() const {
  for (auto& c : comps)
    if (!c.is_ground()) return false;
  return true;
}

bool CtxMorph::is_perm() const {
  for (auto& c : comps)
    if (!c.is_perm()) return false;
  return true;
}

CtxMorph CtxMorph::identity(const Context& g) {
  CtxMorph m;
  for (auto& e : g.entries) {
    m.vars.push_back(e.first);
    m.comps.push_back(ListMorph::identity(e.second));
  }
  return m;
}

CtxMorph CtxMorph::compose(const CtxMorph& g, const CtxMorph& f) {
  if (g.vars != f.vars) throw std::runtime_error("context morphism composition: universes differ");
  CtxMorph m;
  m.vars = f.vars;
  for (size_t i = 0; i < f.comps.size(); ++i)
    m.comps.push_back(ListMorph::compose(g.comps[i], f.comps[i]));
  return m;
}

CtxMorph CtxMorph::tensor(const CtxMorph& a, const CtxMorph& b) {
  if (a.vars != b.vars) throw std::runtime_error("context morphism tensor: universes differ");
  CtxMorph m;
  m.vars = a.vars;
  for (size_t i = 0; i < a.comps.size(); ++i)
    m.comps.push_back(block_sum(a.comps[i], b.comps[i]));
  return m;
}

bool ctx_morph_eq(const CtxMorph& a, const CtxMorph& b) {
  if (a.vars != b.vars) return false;
  for (size_t i = 0; i < a.comps.size(); ++i)
    if (!list_morph_eq(a.comps[i], b.comps[i])) return false;
  return true;
}

std::string show_ctx_morph(const CtxMorph& f) {
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < f.vars.size(); ++i) {
    if (!first) out << ", ";
    first = false;
    out << f.vars[i] << " : " << show_list_morph(f.comps[i]);
  }
  return out.str();
}

}  // namespace srl
