#include "opal/fincat.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace opal {

Obj FinCategory::add_object(std::string name) {
  if (frozen_) throw std::logic_error("FinCategory: frozen");
  obj_names_.push_back(std::move(name));
  return Obj(obj_names_.size()) - 1;
}

Mor FinCategory::add_morphism(std::string name, Obj dom, Obj cod) {
  if (frozen_) throw std::logic_error("FinCategory: frozen");
  mors_.push_back({std::move(name), dom, cod});
  return Mor(mors_.size()) - 1;
}

void FinCategory::set_composite(Mor g, Mor f, Mor gf) {
  if (cod(f) != dom(g) || dom(gf) != dom(f) || cod(gf) != cod(g))
    throw std::invalid_argument("set_composite: endpoint mismatch");
  comp_[{g, f}] = gf;
}

void FinCategory::freeze() {
  if (frozen_) return;
  ids_.resize(obj_names_.size());
  for (Obj o = 0; o < object_count(); ++o) {
    mors_.push_back({"id:" + obj_names_[o], o, o});
    ids_[o] = Mor(mors_.size()) - 1;
  }
  for (Mor m = 0; m < morphism_count(); ++m) {
    comp_[{m, ids_[dom(m)]}] = m;
    comp_[{ids_[cod(m)], m}] = m;
  }
  frozen_ = true;
}

bool FinCategory::is_identity(Mor m) const { return ids_[dom(m)] == m && dom(m) == cod(m); }

std::optional<Mor> FinCategory::compose(Mor g, Mor f) const {
  if (cod(f) != dom(g)) return std::nullopt;
  auto it = comp_.find({g, f});
  if (it == comp_.end()) return std::nullopt;
  return it->second;
}

std::vector<Mor> FinCategory::hom(Obj a, Obj b) const {
  std::vector<Mor> out;
  for (Mor m = 0; m < morphism_count(); ++m)
    if (dom(m) == a && cod(m) == b) out.push_back(m);
  return out;
}

std::optional<Obj> FinCategory::object_by_name(const std::string& n) const {
  for (Obj o = 0; o < object_count(); ++o)
    if (obj_names_[o] == n) return o;
  return std::nullopt;
}

std::optional<Mor> FinCategory::morphism_by_name(const std::string& n) const {
  for (Mor m = 0; m < morphism_count(); ++m)
    if (mors_[m].name == n) return m;
  return std::nullopt;
}

CheckReport FinCategory::check() const {
  CheckReport rep;
  for (Mor f = 0; f < morphism_count(); ++f) {
    if (!compose(identity(cod(f)), f).has_value() || *compose(identity(cod(f)), f) != f)
      rep.fail("identity not left-neutral on " + morphism_name(f));
    if (!compose(f, identity(dom(f))).has_value() || *compose(f, identity(dom(f))) != f)
      rep.fail("identity not right-neutral on " + morphism_name(f));
  }
  for (Mor f = 0; f < morphism_count(); ++f)
    for (Mor g = 0; g < morphism_count(); ++g) {
      if (cod(f) != dom(g)) continue;
      if (!compose(g, f)) {
        rep.fail("missing composite " + morphism_name(g) + " . " + morphism_name(f));
        continue;
      }
      for (Mor h = 0; h < morphism_count(); ++h) {
        if (cod(g) != dom(h)) continue;
        auto hg = compose(h, g);
        auto gf = compose(g, f);
        if (!hg || !gf) continue;
        auto left = compose(*hg, f);
        auto right = compose(h, *gf);
        if (!left || !right || *left != *right)
          rep.fail("associativity fails on (" + morphism_name(h) + ", " + morphism_name(g) + ", " +
                   morphism_name(f) + ")");
      }
    }
  return rep;
}

FinCategory FinCategory::poset(const std::vector<std::string>& names,
                               const std::vector<std::pair<int, int>>& strictly_less) {
  int n = int(names.size());
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [a, b] : strictly_less) leq[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  FinCategory c;
  for (const auto& nm : names) c.add_object(nm);
  std::map<std::pair<int, int>, Mor> arrow;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && leq[a][b]) arrow[{a, b}] = c.add_morphism(names[a] + "<" + names[b], a, b);
  c.freeze();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        if (!(a != b && leq[a][b]) || !(b != d && leq[b][d])) continue;
        Mor f = arrow[{a, b}], g = arrow[{b, d}];
        Mor gf = (a == d) ? c.identity(a) : arrow[{a, d}];
        c.set_composite(g, f, gf);
      }
  return c;
}

CheckReport FinFunctor::check() const {
  CheckReport rep;
  for (Obj o = 0; o < src->object_count(); ++o)
    if (on_mor[src->identity(o)] != dst->identity(on_obj[o]))
      rep.fail("functor does not preserve identity of " + src->object_name(o));
  for (Mor m = 0; m < src->morphism_count(); ++m) {
    if (dst->dom(on_mor[m]) != on_obj[src->dom(m)] || dst->cod(on_mor[m]) != on_obj[src->cod(m)])
      rep.fail("functor endpoints wrong on " + src->morphism_name(m));
  }
  for (Mor f = 0; f < src->morphism_count(); ++f)
    for (Mor g = 0; g < src->morphism_count(); ++g) {
      auto gf = src->compose(g, f);
      if (!gf) continue;
      auto img = dst->compose(on_mor[g], on_mor[f]);
      if (!img || *img != on_mor[*gf])
        rep.fail("functor does not preserve " + src->morphism_name(g) + " . " + src->morphism_name(f));
    }
  return rep;
}

namespace {

Obj letter_dom(const FinCategory& c, const ZigZag::Letter& l) {
  return l.inverse ? c.cod(l.m) : c.dom(l.m);
}
Obj letter_cod(const FinCategory& c, const ZigZag::Letter& l) {
  return l.inverse ? c.dom(l.m) : c.cod(l.m);
}

bool zig_valid(const FinCategory& c, const ZigZag& z) {
  Obj cur = z.from;
  for (const auto& l : z.word) {
    if (letter_dom(c, l) != cur) return false;
    cur = letter_cod(c, l);
  }
  return cur == z.to;
}

// applies one identification at position i if possible
std::optional<ZigZag> reduce_at(const FinCategory& c, const std::set<Mor>& sbar, const ZigZag& z,
                                size_t i) {
  const auto& w = z.word;
  ZigZag r = z;
  if (i < w.size() && !w[i].inverse && c.is_identity(w[i].m)) {
    r.word.erase(r.word.begin() + i);
    return r;
  }
  if (i < w.size() && w[i].inverse && c.is_identity(w[i].m)) {
    r.word.erase(r.word.begin() + i);
    return r;
  }
  if (i + 1 < w.size()) {
    const auto &a = w[i], &b = w[i + 1];
    if (!a.inverse && !b.inverse) {
      auto comp = c.compose(b.m, a.m);
      if (comp) {
        r.word[i] = {false, *comp};
        r.word.erase(r.word.begin() + i + 1);
        return r;
      }
    }
    if (a.inverse && b.inverse) {
      // apply a.m^-1 then b.m^-1 = (a.m b.m)^-1
      auto comp = c.compose(a.m, b.m);
      if (comp && sbar.count(*comp)) {
        r.word[i] = {true, *comp};
        r.word.erase(r.word.begin() + i + 1);
        return r;
      }
    }
    if (!a.inverse && b.inverse && a.m == b.m) {
      r.word.erase(r.word.begin() + i, r.word.begin() + i + 2);
      return r;
    }
    if (a.inverse && !b.inverse && a.m == b.m) {
      r.word.erase(r.word.begin() + i, r.word.begin() + i + 2);
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

ZigZag LocalizedCategory::reduce_once(const ZigZag& z) const {
  for (size_t i = 0; i < z.word.size(); ++i) {
    auto r = reduce_at(*base_, sbar_set_, z, i);
    if (r) return *r;
  }
  return z;
}

std::optional<ZigZag> LocalizedCategory::reduce_at_position(const ZigZag& z, int pos) const {
  return reduce_at(*base_, sbar_set_, z, size_t(pos));
}

ZigZag LocalizedCategory::normalize(const ZigZag& z) const {
  ZigZag cur = z;
  while (true) {
    ZigZag next = reduce_once(cur);
    if (next == cur) return cur;
    cur = next;
  }
}

std::optional<int> LocalizedCategory::class_of(const ZigZag& z) const {
  ZigZag n = normalize(z);
  auto it = class_of_.find(n);
  if (it != class_of_.end()) return it->second;
  it = class_of_.find(z);
  if (it != class_of_.end()) return it->second;
  return std::nullopt;
}

std::vector<int> LocalizedCategory::hom(Obj a, Obj b) const {
  std::vector<int> out;
  for (int i = 0; i < class_count(); ++i)
    if (classes_[i].from == a && classes_[i].to == b) out.push_back(i);
  return out;
}

int LocalizedCategory::identity_class(Obj o) const {
  ZigZag z{{}, o, o};
  auto c = class_of(z);
  if (!c) throw std::logic_error("localization: missing identity class");
  return *c;
}

int LocalizedCategory::compose(int g, int f) const {
  const ZigZag &zg = classes_[g], &zf = classes_[f];
  if (zf.to != zg.from) throw std::invalid_argument("localization compose: endpoint mismatch");
  ZigZag z{zf.word, zf.from, zg.to};
  z.word.insert(z.word.end(), zg.word.begin(), zg.word.end());
  auto c = class_of(z);
  if (!c) throw std::logic_error("localization compose: class escapes the bound");
  return *c;
}

int LocalizedCategory::map_of(Mor m) const {
  ZigZag z{{{false, m}}, base_->dom(m), base_->cod(m)};
  auto c = class_of(z);
  if (!c) throw std::logic_error("localization: missing morphism class");
  return *c;
}

std::optional<int> LocalizedCategory::inverse(int cls) const {
  const ZigZag& z = classes_[cls];
  for (int g : hom(z.to, z.from)) {
    if (compose(g, cls) == identity_class(z.from) && compose(cls, g) == identity_class(z.to))
      return g;
  }
  return std::nullopt;
}

LocalizedCategory localize(const FinCategory& c, const std::vector<Mor>& s, int length_bound) {
  LocalizedCategory loc;
  loc.base_ = &c;
  // close S under composition
  std::set<Mor> sbar(s.begin(), s.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mor> cur(sbar.begin(), sbar.end());
    for (Mor a : cur)
      for (Mor b : cur) {
        auto ab = c.compose(a, b);
        if (ab && !sbar.count(*ab)) {
          sbar.insert(*ab);
          grew = true;
        }
      }
  }
  loc.sbar_.assign(sbar.begin(), sbar.end());
  loc.sbar_set_ = sbar;

  // enumerate all valid words up to the bound
  std::vector<ZigZag> words;
  std::vector<ZigZag::Letter> letters;
  for (Mor m = 0; m < c.morphism_count(); ++m) letters.push_back({false, m});
  for (Mor m : sbar) letters.push_back({true, m});
  for (Obj o = 0; o < c.object_count(); ++o) words.push_back({{}, o, o});
  std::vector<ZigZag> frontier = words;
  for (int len = 1; len <= length_bound + 1; ++len) {
    std::vector<ZigZag> next;
    for (const auto& z : frontier)
      for (const auto& l : letters) {
        if (letter_dom(c, l) != z.to) continue;
        ZigZag e = z;
        e.word.push_back(l);
        e.to = letter_cod(c, l);
        next.push_back(e);
      }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  // union-find over all enumerated words, joining each word to every one-step
  // reduction (regardless of rewrite position)
  std::map<ZigZag, int> idx;
  for (int i = 0; i < int(words.size()); ++i) idx[words[i]] = i;
  std::vector<int> uf(words.size());
  for (size_t i = 0; i < uf.size(); ++i) uf[i] = int(i);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto unite = [&](int a, int b) { uf[find(a)] = find(b); };
  for (int i = 0; i < int(words.size()); ++i) {
    for (size_t pos = 0; pos < words[i].word.size(); ++pos) {
      auto r = reduce_at(c, sbar, words[i], pos);
      if (!r) continue;
      auto it = idx.find(*r);
      if (it == idx.end()) throw std::logic_error("localize: reduction left the enumeration");
      unite(i, it->second);
    }
  }

  // classes keyed by words of length <= bound; the extra layer detects growth
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < int(words.size()); ++i) groups[find(i)].push_back(i);
  bool stable = true;
  for (auto& [root, members] : groups) {
    bool hasShort = false;
    for (int i : members)
      if (int(words[i].word.size()) <= length_bound) hasShort = true;
    if (!hasShort) stable = false;
  }

  std::vector<int> roots;
  for (auto& [root, members] : groups) {
    bool shortClass = false;
    for (int i : members)
      if (int(words[i].word.size()) <= length_bound) shortClass = true;
    if (shortClass) roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end());
  for (int root : roots) {
    const auto& members = groups[root];
    ZigZag best = words[members[0]];
    std::vector<ZigZag> all;
    for (int i : members) {
      all.push_back(words[i]);
      if (std::make_pair(words[i].word.size(), words[i]) < std::make_pair(best.word.size(), best))
        best = words[i];
    }
    std::sort(all.begin(), all.end());
    int cls = int(loc.classes_.size());
    loc.classes_.push_back(best);
    loc.members_.push_back(std::move(all));
    for (int i : members) loc.class_of_[words[i]] = cls;
  }

  // completeness: the last enumeration layer added no classes and composition
  // of representatives stays within the discovered classes
  bool compClosed = true;
  for (int f = 0; f < loc.class_count() && compClosed; ++f)
    for (int g = 0; g < loc.class_count() && compClosed; ++g) {
      if (loc.classes_[f].to != loc.classes_[g].from) continue;
      ZigZag z{loc.classes_[f].word, loc.classes_[f].from, loc.classes_[g].to};
      z.word.insert(z.word.end(), loc.classes_[g].word.begin(), loc.classes_[g].word.end());
      if (!loc.class_of(z)) compClosed = false;
    }
  loc.status_ = (stable && compClosed) ? LocalizationStatus::Complete : LocalizationStatus::Truncated;
  return loc;
}

CheckReport check_localization_functor(const LocalizedCategory& loc) {
  CheckReport rep;
  const FinCategory& c = loc.base();
  if (loc.status() != LocalizationStatus::Complete) {
    rep.fail("localization truncated at the bound");
    return rep;
  }
  for (Obj o = 0; o < c.object_count(); ++o)
    rep.require(loc.map_of(c.identity(o)) == loc.identity_class(o),
                "ell(id) != id at " + c.object_name(o));
  for (Mor f = 0; f < c.morphism_count(); ++f)
    for (Mor g = 0; g < c.morphism_count(); ++g) {
      auto gf = c.compose(g, f);
      if (!gf) continue;
      rep.require(loc.compose(loc.map_of(g), loc.map_of(f)) == loc.map_of(*gf),
                  "ell not functorial on " + c.morphism_name(g) + " . " + c.morphism_name(f));
    }
  for (Mor s : loc.closed_s())
    rep.require(loc.inverse(loc.map_of(s)).has_value(),
                "ell(" + c.morphism_name(s) + ") not invertible");
  return rep;
}

}  // namespace opal
