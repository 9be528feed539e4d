#include "srl/collapse.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

namespace srl {

const MTypePtr& MType::atom() {
  static const MTypePtr a = std::make_shared<MType>(MType{true, {}, nullptr});
  return a;
}

MTypePtr MType::arrow(MInter source, MTypePtr target) {
  std::sort(source.begin(), source.end(),
            [](const MTypePtr& x, const MTypePtr& y) { return mtype_cmp(x, y) < 0; });
  return std::make_shared<MType>(MType{false, std::move(source), std::move(target)});
}

int mtype_cmp(const MTypePtr& a, const MTypePtr& b) {
  if (a->is_atom != b->is_atom) return a->is_atom ? -1 : 1;
  if (a->is_atom) return 0;
  if (a->source.size() != b->source.size())
    return a->source.size() < b->source.size() ? -1 : 1;
  for (size_t i = 0; i < a->source.size(); ++i) {
    int c = mtype_cmp(a->source[i], b->source[i]);
    if (c != 0) return c;
  }
  return mtype_cmp(a->target, b->target);
}

bool mtype_eq(const MTypePtr& a, const MTypePtr& b) { return mtype_cmp(a, b) == 0; }

static int minter_cmp(const MInter& a, const MInter& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = mtype_cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool minter_eq(const MInter& a, const MInter& b) { return minter_cmp(a, b) == 0; }

int mtype_size(const MTypePtr& a) {
  if (a->is_atom) return 1;
  return 1 + minter_size(a->source) + mtype_size(a->target);
}

int minter_size(const MInter& a) {
  int n = 0;
  for (const MTypePtr& x : a) n += mtype_size(x);
  return n;
}

std::string show_mtype(const MTypePtr& a) {
  if (a->is_atom) return "o";
  return show_minter(a->source) + " -o " + show_mtype(a->target);
}

std::string show_minter(const MInter& a) {
  std::string out = "{";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += show_mtype(a[i]);
  }
  return out + "}";
}

MTypePtr multi_of_type(const TypePtr& a) {
  if (a->is_atom) return MType::atom();
  return MType::arrow(multi_of_list(a->source), multi_of_type(a->target));
}

MInter multi_of_list(const TypeList& a) {
  MInter out;
  out.reserve(a.size());
  for (const TypePtr& x : a) out.push_back(multi_of_type(x));
  std::sort(out.begin(), out.end(),
            [](const MTypePtr& x, const MTypePtr& y) { return mtype_cmp(x, y) < 0; });
  return out;
}

bool mtype_leq(const MTypePtr& a, const MTypePtr& b) {
  if (a->is_atom || b->is_atom) return a->is_atom && b->is_atom;
  return scott_leq(b->source, a->source) && mtype_leq(a->target, b->target);
}

bool scott_leq(const MInter& a, const MInter& b) {
  for (const MTypePtr& y : b) {
    bool hit = false;
    for (const MTypePtr& x : a) {
      if (mtype_leq(x, y)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Brute-force validation.

namespace {

struct MTypeLess {
  bool operator()(const MTypePtr& a, const MTypePtr& b) const { return mtype_cmp(a, b) < 0; }
};

struct MInterLess {
  bool operator()(const MInter& a, const MInter& b) const { return minter_cmp(a, b) < 0; }
};

// All sorted multisets of size <= width over the given (sorted) pool.
void combos(const std::vector<MTypePtr>& pool, int width, size_t from, MInter& cur,
            std::vector<MInter>& out) {
  out.push_back(cur);
  if ((int)cur.size() == width) return;
  for (size_t i = from; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    combos(pool, width, i, cur, out);
    cur.pop_back();
  }
}

std::vector<MInter> all_inters(const std::vector<MTypePtr>& pool, int width) {
  MInter cur;
  std::vector<MInter> out;
  combos(pool, width, 0, cur, out);
  std::sort(out.begin(), out.end(), MInterLess{});
  out.erase(std::unique(out.begin(), out.end(),
                        [](const MInter& a, const MInter& b) { return minter_cmp(a, b) == 0; }),
            out.end());
  return out;
}

using BitRows = std::vector<std::vector<std::uint64_t>>;

BitRows make_rows(size_t n) {
  return BitRows(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
}

bool get_bit(const BitRows& m, size_t i, size_t j) { return (m[i][j / 64] >> (j % 64)) & 1; }

bool set_bit(BitRows& m, size_t i, size_t j) {
  std::uint64_t& w = m[i][j / 64];
  std::uint64_t mask = std::uint64_t(1) << (j % 64);
  if (w & mask) return false;
  w |= mask;
  return true;
}

bool warshall(BitRows& m) {
  bool changed = false;
  size_t n = m.size();
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      if (!get_bit(m, i, k)) continue;
      for (size_t w = 0; w < m[i].size(); ++w) {
        std::uint64_t add = m[k][w] & ~m[i][w];
        if (add) {
          m[i][w] |= add;
          changed = true;
        }
      }
    }
  return changed;
}

}  // namespace

ScottValidation validate_scott(int depth, int width, int inter_width) {
  if (inter_width < width) throw CheckError("RuleViolation", "inter_width below source width");
  // Types level by level.
  std::vector<MTypePtr> types = {MType::atom()};
  for (int d = 2; d <= depth; ++d) {
    std::vector<MTypePtr> next = types;
    std::vector<MInter> sources = all_inters(types, width);
    for (const MInter& s : sources)
      for (const MTypePtr& t : types) next.push_back(MType::arrow(s, t));
    std::sort(next.begin(), next.end(), MTypeLess{});
    next.erase(std::unique(next.begin(), next.end(),
                           [](const MTypePtr& a, const MTypePtr& b) { return mtype_eq(a, b); }),
               next.end());
    types = std::move(next);
  }
  std::vector<MInter> inters = all_inters(types, inter_width);

  std::map<MTypePtr, size_t, MTypeLess> tix;
  for (size_t i = 0; i < types.size(); ++i) tix[types[i]] = i;
  std::map<MInter, size_t, MInterLess> iix;
  for (size_t i = 0; i < inters.size(); ++i) iix[inters[i]] = i;

  size_t nt = types.size(), ni = inters.size();
  BitRows tle = make_rows(nt), ile = make_rows(ni);
  for (size_t i = 0; i < nt; ++i) set_bit(tle, i, i);
  for (size_t i = 0; i < ni; ++i) set_bit(ile, i, i);

  // Static schema instances: duplication, projection, erasure.
  size_t empty_ix = iix.at(MInter{});
  for (size_t i = 0; i < ni; ++i) {
    const MInter& a = inters[i];
    set_bit(ile, i, empty_ix);
    if (a.size() == 1 && inter_width >= 2) {
      MInter dup = {a[0], a[0]};
      std::sort(dup.begin(), dup.end(), [](const MTypePtr& x, const MTypePtr& y) {
        return mtype_cmp(x, y) < 0;
      });
      set_bit(ile, i, iix.at(dup));
    }
    if (a.size() == 2) {
      set_bit(ile, i, iix.at(MInter{a[0]}));
      set_bit(ile, i, iix.at(MInter{a[1]}));
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    // Arrow congruence into the type order.
    for (size_t i = 0; i < nt; ++i) {
      if (types[i]->is_atom) continue;
      for (size_t j = 0; j < nt; ++j) {
        if (types[j]->is_atom || get_bit(tle, i, j)) continue;
        if (get_bit(ile, iix.at(types[j]->source), iix.at(types[i]->source)) &&
            get_bit(tle, tix.at(types[i]->target), tix.at(types[j]->target)))
          changed |= set_bit(tle, i, j);
      }
    }
    // Singleton lifting of the type order.
    for (size_t i = 0; i < nt; ++i)
      for (size_t j = 0; j < nt; ++j)
        if (get_bit(tle, i, j))
          changed |= set_bit(ile, iix.at(MInter{types[i]}), iix.at(MInter{types[j]}));
    // Multiset-union congruence.
    for (size_t i = 0; i < ni; ++i)
      for (size_t j = 0; j < ni; ++j) {
        if (!get_bit(ile, i, j)) continue;
        int room = inter_width - (int)std::max(inters[i].size(), inters[j].size());
        if (room <= 0) continue;
        for (const MInter& c : inters) {
          if (c.empty() || (int)c.size() > room) continue;
          MInter lhs = inters[i], rhs = inters[j];
          lhs.insert(lhs.end(), c.begin(), c.end());
          rhs.insert(rhs.end(), c.begin(), c.end());
          auto lt = [](const MTypePtr& x, const MTypePtr& y) { return mtype_cmp(x, y) < 0; };
          std::sort(lhs.begin(), lhs.end(), lt);
          std::sort(rhs.begin(), rhs.end(), lt);
          changed |= set_bit(ile, iix.at(lhs), iix.at(rhs));
        }
      }
    changed |= warshall(tle);
    changed |= warshall(ile);
  }

  ScottValidation v;
  v.types = (int)nt;
  v.inters = (int)ni;
  v.agree = true;
  for (size_t i = 0; i < nt && v.agree; ++i)
    for (size_t j = 0; j < nt; ++j)
      if (get_bit(tle, i, j) != mtype_leq(types[i], types[j])) {
        v.agree = false;
        v.counterexample = show_mtype(types[i]) + " vs " + show_mtype(types[j]) +
                           (get_bit(tle, i, j) ? " (closure only)" : " (procedure only)");
        break;
      }
  for (size_t i = 0; i < ni && v.agree; ++i)
    for (size_t j = 0; j < ni; ++j)
      if (get_bit(ile, i, j) != scott_leq(inters[i], inters[j])) {
        v.agree = false;
        v.counterexample = show_minter(inters[i]) + " vs " + show_minter(inters[j]) +
                           (get_bit(ile, i, j) ? " (closure only)" : " (procedure only)");
        break;
      }
  return v;
}

// ---------------------------------------------------------------------------
// Semantics.

int judgment_cmp(const Judgment& a, const Judgment& b) {
  if (a.ctx.size() != b.ctx.size()) return a.ctx.size() < b.ctx.size() ? -1 : 1;
  for (size_t i = 0; i < a.ctx.size(); ++i) {
    int c = minter_cmp(a.ctx[i], b.ctx[i]);
    if (c != 0) return c;
  }
  return mtype_cmp(a.ty, b.ty);
}

bool judgment_eq(const Judgment& a, const Judgment& b) { return judgment_cmp(a, b) == 0; }

int judgment_size(const Judgment& j) {
  int n = mtype_size(j.ty);
  for (const MInter& e : j.ctx) n += minter_size(e);
  return n;
}

std::string show_judgment(const std::vector<std::string>& universe, const Judgment& j) {
  std::ostringstream out;
  for (size_t i = 0; i < j.ctx.size(); ++i) {
    if (i) out << ", ";
    out << universe[i] << " : " << show_minter(j.ctx[i]);
  }
  out << " |- " << show_mtype(j.ty);
  return out.str();
}

Judgment judgment_of(const std::vector<std::string>& universe, const Context& ctx,
                     const TypePtr& ty) {
  if (ctx.entries.size() != universe.size())
    throw CheckError("RuleViolation", "context does not cover the universe");
  Judgment j;
  j.ctx.reserve(universe.size());
  for (size_t i = 0; i < universe.size(); ++i) {
    if (ctx.entries[i].first != universe[i])
      throw CheckError("RuleViolation", "context misaligned with the universe");
    j.ctx.push_back(multi_of_list(ctx.entries[i].second));
  }
  j.ty = multi_of_type(ty);
  return j;
}

std::vector<Judgment> semantics(const LTermPtr& m, const std::vector<std::string>& universe,
                                int bound, Flavor flavor) {
  std::vector<Judgment> out;
  for (const Approximant& a : enumerate_approximants(m, universe, bound, flavor))
    out.push_back(judgment_of(universe, a.ctx, a.deriv->ty));
  std::sort(out.begin(), out.end(),
            [](const Judgment& a, const Judgment& b) { return judgment_cmp(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end(), judgment_eq), out.end());
  return out;
}

CollapseRecord collapse_map(const Approximant& s) {
  CollapseRecord rec;
  rec.source = s;
  rec.source_eta = to_eta(s.deriv);
  NormalizeResult nr = exp_normalize(s.ctx, rec.source_eta);
  rec.normal = nr.term;
  rec.label = nr.label;
  rec.end_ctx = nr.label.ctx.target();
  rec.end_ty = nr.label.typ->domain();
  rec.steps = (int)nr.trace.size();
  return rec;
}

CollapseReport verify_collapse(const LTermPtr& m, const std::vector<std::string>& universe,
                               int bound, int witness_bound) {
  if (witness_bound < 0) witness_bound = bound;
  CollapseReport rep;
  rep.judgment_bound = bound;
  rep.witness_bound = witness_bound;
  // Any judgment of size <= bound concludes in a type of size <= bound, so
  // enumerating witnesses per conclusion type covers every checked judgment.
  std::vector<TypePtr> roots = enumerate_types(bound);
  std::vector<Approximant> scott_apx =
      enumerate_approximants_roots(m, universe, roots, witness_bound, Flavor::Cartesian);
  std::vector<Approximant> rel_apx =
      enumerate_approximants_roots(m, universe, roots, witness_bound, Flavor::Linear);

  std::vector<Judgment> rel;
  rel.reserve(rel_apx.size());
  for (const Approximant& a : rel_apx) rel.push_back(judgment_of(universe, a.ctx, a.deriv->ty));
  std::sort(rel.begin(), rel.end(),
            [](const Judgment& a, const Judgment& b) { return judgment_cmp(a, b) < 0; });
  rel.erase(std::unique(rel.begin(), rel.end(), judgment_eq), rel.end());

  // Scott judgments with a cheapest witness each.
  std::vector<std::pair<Judgment, size_t>> scott;
  scott.reserve(scott_apx.size());
  for (size_t i = 0; i < scott_apx.size(); ++i)
    scott.push_back({judgment_of(universe, scott_apx[i].ctx, scott_apx[i].deriv->ty), i});
  std::sort(scott.begin(), scott.end(), [&](const auto& a, const auto& b) {
    int c = judgment_cmp(a.first, b.first);
    if (c != 0) return c < 0;
    return scott_apx[a.second].cost < scott_apx[b.second].cost;
  });
  scott.erase(std::unique(scott.begin(), scott.end(),
                          [](const auto& a, const auto& b) { return judgment_eq(a.first, b.first); }),
              scott.end());

  rep.scott_count = (int)scott.size();
  rep.rel_count = (int)rel.size();
  rep.ok = true;

  auto in_scott = [&](const Judgment& j) {
    auto it = std::lower_bound(scott.begin(), scott.end(), j, [](const auto& a, const Judgment& b) {
      return judgment_cmp(a.first, b) < 0;
    });
    return it != scott.end() && judgment_eq(it->first, j);
  };

  for (const Judgment& j : rel) {
    if (judgment_size(j) > bound) continue;
    if (!in_scott(j)) {
      rep.ok = false;
      rep.counterexample = "rel judgment missing from scott: " + show_judgment(universe, j);
      return rep;
    }
  }

  for (const auto& [j, wix] : scott) {
    if (judgment_size(j) > bound) continue;
    ++rep.checked;
    CollapseRecord rec = collapse_map(scott_apx[wix]);
    Judgment end = judgment_of(universe, rec.end_ctx, rec.end_ty);
    bool planar = is_planar(rec.normal);
    bool linear = false, apx = false;
    try {
      DerivPtr nd = deriv_of_eta(rec.end_ctx, rec.normal);
      linear = deriv_linear(nd);
      apx = approximates(raw_of_eta(rec.normal), m);
    } catch (const CheckError&) {
    }
    bool ctx_le = j.ctx.size() == end.ctx.size();
    for (size_t i = 0; ctx_le && i < j.ctx.size(); ++i)
      ctx_le = scott_leq(j.ctx[i], end.ctx[i]);
    bool ty_le = mtype_leq(end.ty, j.ty);
    bool good = planar && linear && apx && ctx_le && ty_le;
    std::ostringstream line;
    line << show_judgment(universe, j) << " | nf |- " << show_judgment(universe, end)
         << " | steps=" << rec.steps << " | " << (good ? "ok" : "FAIL");
    rep.lines.push_back(line.str());
    if (!good) {
      rep.ok = false;
      rep.counterexample = "collapse failed at " + show_judgment(universe, j) +
                           (planar ? "" : " [not planar]") + (linear ? "" : " [not linear]") +
                           (apx ? "" : " [not an approximant]") + (ctx_le ? "" : " [ctx not <=]") +
                           (ty_le ? "" : " [type not <=]");
      return rep;
    }
  }
  return rep;
}

}  // namespace srl
