#include "opal/sites.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal {

OrthRelation::OrthRelation(const FinCategory* base, std::set<std::pair<Mor, Mor>> pairs)
    : base_(base), pairs_(std::move(pairs)) {
  for (auto [f, g] : pairs_) {
    if (base_->cod(f) != base_->cod(g))
      throw std::invalid_argument("OrthRelation: pair without common codomain");
    pairs_.insert({g, f});
  }
}

bool OrthRelation::orthogonal(Mor f, Mor g) const { return pairs_.count({f, g}) > 0; }

CheckReport OrthRelation::check() const {
  CheckReport rep;
  const FinCategory& c = *base_;
  for (auto [g1, g2] : pairs_) {
    if (!pairs_.count({g2, g1}))
      rep.fail("symmetry fails on (" + c.morphism_name(g1) + ", " + c.morphism_name(g2) + ")");
    for (Mor f = 0; f < c.morphism_count(); ++f) {
      auto a = c.compose(f, g1), b = c.compose(f, g2);
      if (a && b && !pairs_.count({*a, *b}))
        rep.fail("post-composition fails: " + c.morphism_name(f) + " . (" + c.morphism_name(g1) +
                 ", " + c.morphism_name(g2) + ")");
    }
    for (Mor h1 = 0; h1 < c.morphism_count(); ++h1)
      for (Mor h2 = 0; h2 < c.morphism_count(); ++h2) {
        auto a = c.compose(g1, h1), b = c.compose(g2, h2);
        if (a && b && !pairs_.count({*a, *b}))
          rep.fail("pre-composition fails on (" + c.morphism_name(g1) + "." + c.morphism_name(h1) +
                   ", " + c.morphism_name(g2) + "." + c.morphism_name(h2) + ")");
      }
  }
  return rep;
}

OrthRelation close_orthogonality(const FinCategory& base,
                                 const std::vector<std::pair<Mor, Mor>>& generators) {
  std::set<std::pair<Mor, Mor>> cur;
  for (auto [f, g] : generators) {
    if (base.cod(f) != base.cod(g))
      throw std::invalid_argument("close_orthogonality: generator without common codomain");
    cur.insert({f, g});
    cur.insert({g, f});
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<Mor, Mor>> snapshot(cur.begin(), cur.end());
    for (auto [g1, g2] : snapshot) {
      for (Mor f = 0; f < base.morphism_count(); ++f) {
        auto a = base.compose(f, g1), b = base.compose(f, g2);
        if (a && b && cur.insert({*a, *b}).second) {
          cur.insert({*b, *a});
          grew = true;
        }
      }
      for (Mor h1 = 0; h1 < base.morphism_count(); ++h1)
        for (Mor h2 = 0; h2 < base.morphism_count(); ++h2) {
          auto a = base.compose(g1, h1), b = base.compose(g2, h2);
          if (a && b && cur.insert({*a, *b}).second) {
            cur.insert({*b, *a});
            grew = true;
          }
        }
    }
  }
  return OrthRelation(&base, std::move(cur));
}

OrthRelation minimal_orthogonality(const FinCategory& base) { return OrthRelation(&base, {}); }

OrthRelation maximal_orthogonality(const FinCategory& base) {
  std::set<std::pair<Mor, Mor>> all;
  for (Mor f = 0; f < base.morphism_count(); ++f)
    for (Mor g = 0; g < base.morphism_count(); ++g)
      if (base.cod(f) == base.cod(g)) all.insert({f, g});
  return OrthRelation(&base, std::move(all));
}

ConfiguredStructure::ConfiguredStructure(const FinCategory* base, int arity_bound,
                                         std::set<Config> configs)
    : base_(base), arity_bound_(arity_bound) {
  for (const auto& c : configs) {
    if (c.empty()) throw std::invalid_argument("ConfiguredStructure: untargeted empty configuration");
    Obj t = base_->cod(c[0]);
    for (Mor m : c)
      if (base_->cod(m) != t)
        throw std::invalid_argument("ConfiguredStructure: mixed codomains in a configuration");
    configs_.insert({t, c});
  }
  // singletons and empties are always present
  for (Obj o = 0; o < base_->object_count(); ++o) configs_.insert({o, {}});
  for (Mor m = 0; m < base_->morphism_count(); ++m) configs_.insert({base_->cod(m), {m}});
}

bool ConfiguredStructure::member(Obj target, const Config& c) const {
  if (!c.empty() && base_->cod(c[0]) != target) return false;
  return configs_.count({target, c}) > 0;
}

std::vector<Config> ConfiguredStructure::configurations(Obj target, int arity) const {
  std::vector<Config> out;
  for (const auto& [t, c] : configs_)
    if (t == target && int(c.size()) == arity) out.push_back(c);
  return out;
}

CheckReport ConfiguredStructure::check() const {
  CheckReport rep;
  const FinCategory& c = *base_;
  for (Obj o = 0; o < c.object_count(); ++o)
    rep.require(member(o, {}), "missing empty configuration at " + c.object_name(o));
  for (Mor m = 0; m < c.morphism_count(); ++m)
    rep.require(member(c.cod(m), {m}), "inclusivity fails for " + c.morphism_name(m));
  for (const auto& [t, cfg] : configs_) {
    // symmetry: adjacent transpositions suffice to generate all permutations
    for (size_t i = 0; i + 1 < cfg.size(); ++i) {
      Config p = cfg;
      std::swap(p[i], p[i + 1]);
      rep.require(member(t, p), "symmetry fails on " + config_str(c, t, cfg));
    }
    // subsequences: dropping one entry suffices
    for (size_t i = 0; i < cfg.size(); ++i) {
      Config p = cfg;
      p.erase(p.begin() + i);
      rep.require(member(t, p), "subset closure fails on " + config_str(c, t, cfg));
    }
    // composition with singletons and with one expansion step, arity permitting
    for (size_t i = 0; i < cfg.size(); ++i) {
      for (const auto& [t2, inner] : configs_) {
        if (t2 != c.dom(cfg[i])) continue;
        if (int(cfg.size()) - 1 + int(inner.size()) > arity_bound_) continue;
        Config comp;
        bool ok = true;
        for (size_t j = 0; j < cfg.size(); ++j) {
          if (j == i) {
            for (Mor g : inner) {
              auto fg = c.compose(cfg[j], g);
              if (!fg) {
                ok = false;
                break;
              }
              comp.push_back(*fg);
            }
          } else {
            comp.push_back(cfg[j]);
          }
        }
        if (ok && !member(t, comp))
          rep.fail("composition closure fails on " + config_str(c, t, cfg) + " with " +
                   config_str(c, t2, inner));
      }
    }
  }
  return rep;
}

ConfiguredStructure close_configurations(const FinCategory& base,
                                         const std::vector<Config>& generators, int arity_bound,
                                         const std::vector<Obj>& empty_targets) {
  if (arity_bound < 2) throw std::invalid_argument("close_configurations: arity bound must be >= 2");
  std::set<std::pair<Obj, Config>> cur;
  for (Obj o = 0; o < base.object_count(); ++o) cur.insert({o, {}});
  for (Obj o : empty_targets) cur.insert({o, {}});
  for (Mor m = 0; m < base.morphism_count(); ++m) cur.insert({base.cod(m), {m}});
  for (const auto& g : generators) {
    if (g.empty()) continue;
    Obj t = base.cod(g[0]);
    for (Mor m : g)
      if (base.cod(m) != t)
        throw std::invalid_argument("close_configurations: generator with mixed codomains");
    if (int(g.size()) <= arity_bound) cur.insert({t, g});
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<Obj, Config>> snapshot(cur.begin(), cur.end());
    for (const auto& [t, cfg] : snapshot) {
      for (size_t i = 0; i + 1 < cfg.size(); ++i) {
        Config p = cfg;
        std::swap(p[i], p[i + 1]);
        if (cur.insert({t, p}).second) grew = true;
      }
      for (size_t i = 0; i < cfg.size(); ++i) {
        Config p = cfg;
        p.erase(p.begin() + i);
        if (cur.insert({t, p}).second) grew = true;
      }
      // compose with singletons and binary splits; iterating reaches everything
      for (size_t i = 0; i < cfg.size(); ++i) {
        for (const auto& [t2, inner] : snapshot) {
          if (t2 != base.dom(cfg[i])) continue;
          if (int(cfg.size()) - 1 + int(inner.size()) > arity_bound) continue;
          Config comp;
          bool ok = true;
          for (size_t j = 0; j < cfg.size(); ++j) {
            if (j == i) {
              for (Mor g : inner) {
                auto fg = base.compose(cfg[j], g);
                if (!fg) {
                  ok = false;
                  break;
                }
                comp.push_back(*fg);
              }
            } else {
              comp.push_back(cfg[j]);
            }
          }
          if (ok && cur.insert({t, comp}).second) grew = true;
        }
      }
    }
  }
  std::set<Config> nonempty;
  for (const auto& [t, cfg] : cur)
    if (!cfg.empty()) nonempty.insert(cfg);
  return ConfiguredStructure(&base, arity_bound, std::move(nonempty));
}

ConfiguredStructure minimal_configured(const FinCategory& base, int arity_bound) {
  return ConfiguredStructure(&base, arity_bound, {});
}

ConfiguredStructure maximal_configured(const FinCategory& base, int arity_bound) {
  std::set<Config> all;
  // all same-codomain sequences up to the bound
  for (Obj t = 0; t < base.object_count(); ++t) {
    std::vector<Mor> in;
    for (Mor m = 0; m < base.morphism_count(); ++m)
      if (base.cod(m) == t) in.push_back(m);
    std::vector<Config> layer{{}};
    for (int a = 1; a <= arity_bound; ++a) {
      std::vector<Config> next;
      for (const auto& c : layer)
        for (Mor m : in) {
          Config e = c;
          e.push_back(m);
          next.push_back(e);
          all.insert(e);
        }
      layer = std::move(next);
    }
  }
  return ConfiguredStructure(&base, arity_bound, std::move(all));
}

ConfiguredStructure psi(const OrthRelation& o, int arity_bound) {
  const FinCategory& base = o.base();
  std::set<Config> all;
  for (Obj t = 0; t < base.object_count(); ++t) {
    std::vector<Mor> in;
    for (Mor m = 0; m < base.morphism_count(); ++m)
      if (base.cod(m) == t) in.push_back(m);
    std::vector<Config> layer{{}};
    for (int a = 1; a <= arity_bound; ++a) {
      std::vector<Config> next;
      for (const auto& c : layer)
        for (Mor m : in) {
          bool ok = true;
          for (Mor prev : c)
            if (!o.orthogonal(prev, m)) ok = false;
          if (!ok) continue;
          Config e = c;
          e.push_back(m);
          next.push_back(e);
          all.insert(e);
        }
      layer = std::move(next);
    }
  }
  return ConfiguredStructure(&base, arity_bound, std::move(all));
}

OrthRelation phi(const ConfiguredStructure& k) {
  const FinCategory& base = k.base();
  std::set<std::pair<Mor, Mor>> pairs;
  for (const auto& [t, cfg] : k.all())
    if (cfg.size() == 2) pairs.insert({cfg[0], cfg[1]});
  return OrthRelation(&base, std::move(pairs));
}

UnitComparison compare_unit(const ConfiguredStructure& k) {
  ConfiguredStructure image = psi(phi(k), k.arity_bound());
  for (const auto& [t, cfg] : image.all()) {
    if (!k.member(t, cfg)) return {false, t, cfg};
  }
  for (const auto& [t, cfg] : k.all()) {
    if (!image.member(t, cfg))
      throw std::logic_error("compare_unit: configured structure not contained in Psi Phi image");
  }
  return {true, -1, {}};
}

std::string config_str(const FinCategory& c, Obj target, const Config& cfg) {
  std::string s = "(" + c.object_name(target) + ";{";
  for (size_t i = 0; i < cfg.size(); ++i)
    s += c.morphism_name(cfg[i]) + (i + 1 < cfg.size() ? "," : "");
  return s + "})";
}

}  // namespace opal
