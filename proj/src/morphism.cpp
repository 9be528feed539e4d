#include "srl/morphism.hpp"

#include <sstream>
#include <stdexcept>

namespace srl {

bool IndexMap::is_identity() const {
  if (codomain != domain()) return false;
  for (int i = 0; i < codomain; ++i)
    if (table[i] != i + 1) return false;
  return true;
}

bool IndexMap::is_bijection() const {
  if (codomain != domain()) return false;
  std::vector<bool> seen(codomain, false);
  for (int v : table) {
    if (v < 1 || v > codomain || seen[v - 1]) return false;
    seen[v - 1] = true;
  }
  return true;
}

IndexMap IndexMap::identity(int n) {
  IndexMap m{n, {}};
  m.table.reserve(n);
  for (int i = 1; i <= n; ++i) m.table.push_back(i);
  return m;
}

IndexMap IndexMap::compose(const IndexMap& a, const IndexMap& b) {
  if (a.domain() != b.codomain)
    throw std::runtime_error("index map composition: domain/codomain mismatch");
  IndexMap m{a.codomain, {}};
  m.table.reserve(b.table.size());
  for (int v : b.table) m.table.push_back(a.table[v - 1]);
  return m;
}

bool index_eq(const IndexMap& a, const IndexMap& b) {
  return a.codomain == b.codomain && a.table == b.table;
}

std::string show_index(const IndexMap& a) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < a.table.size(); ++i) {
    if (i) out << ",";
    out << a.table[i];
  }
  out << "]";
  return out.str();
}

TypeList apply_index(const TypeList& a, const IndexMap& alpha) {
  if (alpha.codomain != static_cast<int>(a.size()))
    throw std::runtime_error("apply_index: list length does not match codomain");
  TypeList out;
  out.reserve(alpha.table.size());
  for (int v : alpha.table) out.push_back(a[v - 1]);
  return out;
}

TypeList ListMorph::target() const {
  TypeList out;
  out.reserve(nested.size());
  for (auto& f : nested) out.push_back(f->codomain());
  return out;
}

bool ListMorph::is_identity() const {
  if (!alpha.is_identity()) return false;
  for (auto& f : nested)
    if (!f->is_identity()) return false;
  return true;
}

bool ListMorph::is_ground() const {
  for (auto& f : nested)
    if (!f->is_identity()) return false;
  return true;
}

bool ListMorph::is_linear() const {
  if (!alpha.is_bijection()) return false;
  for (auto& f : nested)
    if (!f->is_linear()) return false;
  return true;
}

bool ListMorph::is_perm() const { return is_ground() && alpha.is_bijection(); }

ListMorph ListMorph::identity(const TypeList& a) {
  ListMorph m{a, IndexMap::identity(static_cast<int>(a.size())), {}};
  for (auto& t : a) m.nested.push_back(TypeMorph::identity(t));
  return m;
}

ListMorph ListMorph::ground(const TypeList& a, IndexMap alpha) {
  if (alpha.codomain != static_cast<int>(a.size()))
    throw std::runtime_error("ground morphism: index map does not fit the source");
  ListMorph m{a, std::move(alpha), {}};
  for (int v : m.alpha.table) m.nested.push_back(TypeMorph::identity(a[v - 1]));
  return m;
}

ListMorph ListMorph::compose(const ListMorph& g, const ListMorph& f) {
  if (!list_eq(f.target(), g.source))
    throw std::runtime_error("list morphism composition: target/source mismatch");
  ListMorph m{f.source, IndexMap::compose(f.alpha, g.alpha), {}};
  m.nested.reserve(g.nested.size());
  for (size_t j = 0; j < g.nested.size(); ++j)
    m.nested.push_back(TypeMorph::compose(g.nested[j], f.nested[g.alpha.table[j] - 1]));
  return m;
}

TypePtr TypeMorph::domain() const {
  if (is_atom) return Type::atom();
  return Type::arrow(left.target(), right->domain());
}

TypePtr TypeMorph::codomain() const {
  if (is_atom) return Type::atom();
  return Type::arrow(left.source, right->codomain());
}

bool TypeMorph::is_identity() const {
  if (is_atom) return true;
  return left.is_identity() && right->is_identity();
}

bool TypeMorph::is_linear() const {
  if (is_atom) return true;
  return left.is_linear() && right->is_linear();
}

TypeMorphPtr TypeMorph::atom() {
  static const TypeMorphPtr a = std::make_shared<TypeMorph>(TypeMorph{true, {}, nullptr});
  return a;
}

TypeMorphPtr TypeMorph::arrow(ListMorph left, TypeMorphPtr right) {
  return std::make_shared<TypeMorph>(TypeMorph{false, std::move(left), std::move(right)});
}

TypeMorphPtr TypeMorph::identity(const TypePtr& a) {
  if (a->is_atom) return atom();
  return arrow(ListMorph::identity(a->source), identity(a->target));
}

TypeMorphPtr TypeMorph::compose(const TypeMorphPtr& g, const TypeMorphPtr& f) {
  if (!type_eq(f->codomain(), g->domain()))
    throw std::runtime_error("type morphism composition: codomain/domain mismatch");
  if (f->is_atom) return atom();
  // Left components compose the other way round.
  return arrow(ListMorph::compose(f->left, g->left), compose(g->right, f->right));
}

bool list_morph_eq(const ListMorph& a, const ListMorph& b) {
  if (!list_eq(a.source, b.source) || !index_eq(a.alpha, b.alpha)) return false;
  for (size_t i = 0; i < a.nested.size(); ++i)
    if (!type_morph_eq(a.nested[i], b.nested[i])) return false;
  return true;
}

bool type_morph_eq(const TypeMorphPtr& a, const TypeMorphPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->is_atom != b->is_atom) return false;
  if (a->is_atom) return true;
  return list_morph_eq(a->left, b->left) && type_morph_eq(a->right, b->right);
}

std::string show_list_morph(const ListMorph& f, bool with_typing) {
  std::ostringstream out;
  if (f.is_identity()) {
    out << "id@" << show_list(f.source);
    return out.str();
  }
  out << "<" << show_index(f.alpha) << ";";
  for (size_t i = 0; i < f.nested.size(); ++i) {
    out << (i ? "," : " ") << show_type_morph(f.nested[i]);
  }
  out << ">";
  if (with_typing) out << " : " << show_list(f.source) << " -> " << show_list(f.target());
  return out.str();
}

std::string show_type_morph(const TypeMorphPtr& f) {
  if (f->is_identity()) return "id@" + show_type(f->domain());
  return "(" + show_list_morph(f->left, false) + " -o " + show_type_morph(f->right) + ")";
}

ListMorph contraction(const TypePtr& a, int n) {
  IndexMap alpha{1, std::vector<int>(n, 1)};
  return ListMorph::ground({a}, std::move(alpha));
}

ListMorph weakening(const TypeList& a, int i) {
  IndexMap alpha{static_cast<int>(a.size()), {}};
  for (int j = 1; j <= static_cast<int>(a.size()); ++j)
    if (j != i) alpha.table.push_back(j);
  return ListMorph::ground(a, std::move(alpha));
}

ListMorph terminal(const TypeList& a) {
  return ListMorph::ground(a, IndexMap{static_cast<int>(a.size()), {}});
}

ListMorph permutation(const TypeList& a, IndexMap table) {
  if (!table.is_bijection())
    throw std::runtime_error("permutation: table is not a bijection");
  return ListMorph::ground(a, std::move(table));
}

ListMorph ground_part(const ListMorph& f) { return ListMorph::ground(f.source, f.alpha); }

ListMorph nest_part(const ListMorph& f) {
  ListMorph m{apply_index(f.source, f.alpha),
              IndexMap::identity(static_cast<int>(f.nested.size())), f.nested};
  return m;
}

TypeMorphPtr seq_arrow(const std::vector<ListMorph>& lefts) {
  TypeMorphPtr m = TypeMorph::atom();
  for (auto it = lefts.rbegin(); it != lefts.rend(); ++it)
    m = TypeMorph::arrow(*it, m);
  return m;
}

std::vector<ListMorph> arrow_parts(const TypeMorphPtr& f) {
  std::vector<ListMorph> out;
  const TypeMorph* cur = f.get();
  while (!cur->is_atom) {
    out.push_back(cur->left);
    cur = cur->right.get();
  }
  return out;
}

ListMorph block_sum(const ListMorph& a, const ListMorph& b) {
  ListMorph m;
  m.source = a.source;
  m.source.insert(m.source.end(), b.source.begin(), b.source.end());
  m.alpha.codomain = static_cast<int>(m.source.size());
  m.alpha.table = a.alpha.table;
  int off = static_cast<int>(a.source.size());
  for (int v : b.alpha.table) m.alpha.table.push_back(v + off);
  m.nested = a.nested;
  m.nested.insert(m.nested.end(), b.nested.begin(), b.nested.end());
  return m;
}

}  // namespace srl
