#include "opal/operads.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace opal {

Color SetOperad::add_color(std::string name) {
  colors_.push_back(std::move(name));
  units_.resize(colors_.size(), El{});
  return Color(colors_.size()) - 1;
}

SetOperad::El SetOperad::add_element(const Profile& p, std::string name) {
  auto it = pid_.find(p);
  int pid;
  if (it == pid_.end()) {
    pid = int(profiles_.size());
    profiles_.push_back(p);
    elems_.emplace_back();
    pid_[p] = pid;
  } else {
    pid = it->second;
  }
  elems_[pid].push_back(std::move(name));
  El e{pid, int(elems_[pid].size()) - 1};
  elem_by_name_[{pid, elems_[pid].back()}] = e.idx;
  return e;
}

void SetOperad::add_alias(const Profile& p, const std::string& alias, El el) {
  alias_[{profile_id(p), alias}] = el.idx;
}

void SetOperad::set_unit(Color c, El e) { units_[c] = e; }

void SetOperad::set_rules(CompRule comp, ActRule act) {
  comp_rule_ = std::move(comp);
  act_rule_ = std::move(act);
}

std::optional<Color> SetOperad::color_by_name(const std::string& n) const {
  for (Color c = 0; c < color_count(); ++c)
    if (colors_[c] == n) return c;
  return std::nullopt;
}

int SetOperad::profile_id(const Profile& p) const {
  auto it = pid_.find(p);
  return it == pid_.end() ? -1 : it->second;
}

int SetOperad::entry_size(const Profile& p) const {
  int pid = profile_id(p);
  return pid < 0 ? 0 : entry_size(pid);
}

std::optional<SetOperad::El> SetOperad::element_by_name(const Profile& p,
                                                        const std::string& name) const {
  int pid = profile_id(p);
  if (pid < 0) return std::nullopt;
  auto it = elem_by_name_.find({pid, name});
  if (it == elem_by_name_.end()) return std::nullopt;
  return El{pid, it->second};
}

std::optional<SetOperad::El> SetOperad::resolve(const Profile& p, const std::string& name) const {
  auto direct = element_by_name(p, name);
  if (direct) return direct;
  int pid = profile_id(p);
  if (pid < 0) return std::nullopt;
  auto it = alias_.find({pid, name});
  if (it == alias_.end()) return std::nullopt;
  return El{pid, it->second};
}

std::vector<SetOperad::El> SetOperad::elements(const Profile& p) const {
  std::vector<El> out;
  int pid = profile_id(p);
  if (pid < 0) return out;
  for (int i = 0; i < entry_size(pid); ++i) out.push_back({pid, i});
  return out;
}

std::vector<SetOperad::El> SetOperad::all_elements() const {
  std::vector<El> out;
  for (int pid = 0; pid < profile_count(); ++pid)
    for (int i = 0; i < entry_size(pid); ++i) out.push_back({pid, i});
  return out;
}

SetOperad::El SetOperad::unit(Color c) const {
  if (units_[c].pid < 0) throw std::logic_error("SetOperad: missing unit for color " + colors_[c]);
  return units_[c];
}

std::optional<SetOperad::El> SetOperad::compose_at(El p, int i, El q) const {
  const Profile& pp = profiles_[p.pid];
  const Profile& pq = profiles_[q.pid];
  if (i < 0 || i >= pp.arity()) throw std::invalid_argument("compose_at: bad position");
  if (pp.in[i] != pq.out) throw std::invalid_argument("compose_at: color mismatch");
  if (pp.arity() + pq.arity() - 1 > arity_bound_) return std::nullopt;
  auto key = std::make_tuple(p.pid, p.idx, i, q.pid, q.idx);
  auto it = comp_memo_.find(key);
  if (it != comp_memo_.end()) return it->second;
  std::optional<El> r = comp_rule_(*this, p, i, q);
  if (!r && !partial_)
    throw std::logic_error("SetOperad: composition undefined within the arity bound");
  if (r) {
    Profile expect = profile_compose_at(pp, i, pq);
    if (!(profiles_[r->pid] == expect))
      throw std::logic_error("SetOperad: composition produced a wrong profile");
  }
  comp_memo_[key] = r;
  return r;
}

std::optional<SetOperad::El> SetOperad::act(El p, const Perm& sigma) const {
  const Profile& pp = profiles_[p.pid];
  if (int(sigma.size()) != pp.arity()) throw std::invalid_argument("act: size mismatch");
  if (perm_is_id(sigma)) return p;
  std::optional<El> r = act_rule_(*this, p, sigma);
  if (!r && !partial_) throw std::logic_error("SetOperad: action undefined");
  if (r) {
    Profile expect{act_right(pp.in, sigma), pp.out};
    if (!(profiles_[r->pid] == expect))
      throw std::logic_error("SetOperad: action produced a wrong profile");
  }
  return r;
}

std::optional<SetOperad::El> SetOperad::gamma(El p, const std::vector<El>& qs) const {
  const Profile& pp = profiles_[p.pid];
  int n = pp.arity();
  if (int(qs.size()) != n) throw std::invalid_argument("gamma: arity mismatch");
  // splice low-arity arguments first so intermediate arities never exceed
  // max(n, final arity)
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return profiles_[qs[a].pid].arity() < profiles_[qs[b].pid].arity();
  });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[i] = i;
  El cur = p;
  for (int j : order) {
    auto next = compose_at(cur, pos[j], qs[j]);
    if (!next) return std::nullopt;
    cur = *next;
    int k = profiles_[qs[j].pid].arity();
    for (int i = 0; i < n; ++i)
      if (pos[i] > pos[j]) pos[i] += k - 1;
  }
  return cur;
}

std::optional<SetOperad::El> SetOperad::structure_map(const PlanarTree& t,
                                                      const std::vector<El>& dec) const {
  if (t.is_exceptional()) {
    if (!dec.empty()) throw std::invalid_argument("structure_map: decoration on an exceptional edge");
    return unit(t.exceptional_color());
  }
  if (int(dec.size()) != t.vertex_count())
    throw std::invalid_argument("structure_map: decoration size mismatch");
  for (int v = 0; v < t.vertex_count(); ++v)
    if (!(profiles_[dec[v].pid] == t.vertex_profile(v)))
      throw std::invalid_argument("structure_map: decoration profile mismatch at vertex " +
                                  std::to_string(v) + " of " + t.str() + ": " +
                                  profile_str(profiles_[dec[v].pid]) + " vs " +
                                  profile_str(t.vertex_profile(v)));
  GraftDecomposition gd = decompose_grafting(t);
  int pos = 0;
  auto eval = [&](auto&& self, const GraftRecipe& r) -> std::optional<El> {
    if (r.is_exceptional) return unit(r.color);
    El root = dec[pos++];
    if (r.branches.empty()) return root;
    std::vector<El> vals;
    for (const auto& b : r.branches) {
      auto v = self(self, b);
      if (!v) return std::nullopt;
      vals.push_back(*v);
    }
    return gamma(root, vals);
  };
  auto val = eval(eval, gd.recipe);
  if (!val) return std::nullopt;
  return act(*val, gd.input_permutation);
}

CheckReport SetOperad::check() const {
  CheckReport rep;
  auto describe = [&](El e) { return profile_str(profiles_[e.pid]) + ":" + element_name(e); };

  for (Color c = 0; c < color_count(); ++c) {
    if (units_[c].pid < 0) {
      rep.fail("missing unit for color " + colors_[c]);
      continue;
    }
    if (!(profiles_[units_[c].pid] == Profile{{c}, c}))
      rep.fail("unit has wrong profile at " + colors_[c]);
  }

  std::vector<El> all = all_elements();
  for (const El& p : all) {
    const Profile& pp = profiles_[p.pid];
    int n = pp.arity();
    if (units_[pp.out].pid >= 0) {
      auto r = compose_at(unit(pp.out), 0, p);
      if (r && !(*r == p)) rep.fail("left unity fails on " + describe(p));
    }
    for (int i = 0; i < n; ++i) {
      if (units_[pp.in[i]].pid < 0) continue;
      auto r = compose_at(p, i, unit(pp.in[i]));
      if (r && !(*r == p)) rep.fail("right unity fails on " + describe(p) + " at " + std::to_string(i));
    }
  }

  for (const El& p : all) {
    const Profile& pp = profiles_[p.pid];
    int n = pp.arity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int qp = 0; qp < profile_count(); ++qp) {
          if (profiles_[qp].out != pp.in[i]) continue;
          for (int rp = 0; rp < profile_count(); ++rp) {
            if (profiles_[rp].out != pp.in[j]) continue;
            int l = profiles_[qp].arity(), m = profiles_[rp].arity();
            if (n + l + m - 2 > arity_bound_) continue;
            for (int qi = 0; qi < entry_size(qp); ++qi)
              for (int ri = 0; ri < entry_size(rp); ++ri) {
                El q{qp, qi}, r{rp, ri};
                auto pr = compose_at(p, j, r);
                auto pq = compose_at(p, i, q);
                if (!pr || !pq) continue;
                auto lhs = compose_at(*pr, i, q);
                auto rhs = compose_at(*pq, j - 1 + l, r);
                if (!lhs || !rhs) continue;
                if (!(*lhs == *rhs))
                  rep.fail("horizontal associativity fails on " + describe(p) + ", " + describe(q) +
                           ", " + describe(r));
              }
          }
        }
    for (int i = 0; i < n; ++i)
      for (int qp = 0; qp < profile_count(); ++qp) {
        if (profiles_[qp].out != pp.in[i]) continue;
        int m = profiles_[qp].arity();
        for (int j = 0; j < m; ++j)
          for (int rp = 0; rp < profile_count(); ++rp) {
            if (profiles_[rp].out != profiles_[qp].in[j]) continue;
            if (n + m + profiles_[rp].arity() - 2 > arity_bound_) continue;
            for (int qi = 0; qi < entry_size(qp); ++qi)
              for (int ri = 0; ri < entry_size(rp); ++ri) {
                El q{qp, qi}, r{rp, ri};
                auto pq = compose_at(p, i, q);
                auto qr = compose_at(q, j, r);
                if (!pq || !qr) continue;
                auto lhs = compose_at(*pq, i + j, r);
                auto rhs = compose_at(p, i, *qr);
                if (!lhs || !rhs) continue;
                if (!(*lhs == *rhs))
                  rep.fail("vertical associativity fails on " + describe(p) + ", " + describe(q) +
                           ", " + describe(r));
              }
          }
      }
  }

  for (const El& p : all) {
    const Profile& pp = profiles_[p.pid];
    int n = pp.arity();
    if (n == 0) continue;
    auto sigmas = all_perms(n);
    for (const Perm& sigma : sigmas)
      for (int i = 0; i < n; ++i)
        for (int qp = 0; qp < profile_count(); ++qp) {
          if (profiles_[qp].out != pp.in[sigma[i]]) continue;
          int m = profiles_[qp].arity();
          if (n + m - 1 > arity_bound_) continue;
          auto taus = all_perms(m);
          for (int qi = 0; qi < entry_size(qp); ++qi)
            for (const Perm& tau : taus) {
              El q{qp, qi};
              auto top = compose_at(p, sigma[i], q);
              auto ps = act(p, sigma);
              auto qt = act(q, tau);
              if (!top || !ps || !qt) continue;
              std::vector<int> ks(n, 1);
              ks[i] = m;
              std::vector<Perm> taus_sum(n, perm_id(1));
              taus_sum[i] = tau;
              Perm sit = perm_compose(block_perm(sigma, ks), block_sum(taus_sum));
              auto lhs = act(*top, sit);
              auto rhs = compose_at(*ps, i, *qt);
              if (!lhs || !rhs) continue;
              if (!(*lhs == *rhs))
                rep.fail("equivariance fails on " + describe(p) + " with sigma=" + perm_str(sigma) +
                         ", q=" + describe(q) + ", tau=" + perm_str(tau));
            }
        }
  }

  for (const El& p : all) {
    int n = profiles_[p.pid].arity();
    if (n <= 1) continue;
    std::vector<Perm> gens;
    if (n <= 3) {
      gens = all_perms(n);
    } else {
      gens.push_back(perm_id(n));
      for (int k = 0; k + 1 < n; ++k) {
        Perm t = perm_id(n);
        std::swap(t[k], t[k + 1]);
        gens.push_back(t);
      }
    }
    for (const Perm& s : gens)
      for (const Perm& t : gens) {
        auto ps = act(p, s);
        if (!ps) continue;
        auto pst = act(*ps, t);
        auto pc = act(p, perm_compose(s, t));
        if (!pst || !pc) continue;
        if (!(*pst == *pc))
          rep.fail("action composition fails on " + describe(p) + " with " + perm_str(s) + ", " +
                   perm_str(t));
      }
  }
  return rep;
}

CheckReport OperadMorphism::check() const {
  CheckReport rep;
  auto mapped_profile = [&](const Profile& p) {
    Profile q;
    q.out = on_color(p.out);
    for (Color c : p.in) q.in.push_back(on_color(c));
    return q;
  };
  for (Color c = 0; c < src->color_count(); ++c) {
    auto img = on_el(src->unit(c));
    if (!img || !(*img == dst->unit(on_color(c))))
      rep.fail("morphism does not preserve the unit of " + src->color_name(c));
  }
  for (const auto& p : src->all_elements()) {
    auto img = on_el(p);
    if (!img) {
      rep.fail("morphism undefined on " + src->element_name(p));
      continue;
    }
    if (!(dst->profile_of_el(*img) == mapped_profile(src->profile_of_el(p))))
      rep.fail("morphism maps " + src->element_name(p) + " to a wrong profile");
  }
  for (const auto& p : src->all_elements()) {
    const Profile& pp = src->profile_of_el(p);
    int n = pp.arity();
    for (int i = 0; i < n; ++i)
      for (int qp = 0; qp < src->profile_count(); ++qp) {
        if (src->profile_of(qp).out != pp.in[i]) continue;
        for (int qi = 0; qi < src->entry_size(qp); ++qi) {
          SetOperad::El q{qp, qi};
          auto comp = src->compose_at(p, i, q);
          if (!comp) continue;
          auto fp = on_el(p), fq = on_el(q), fc = on_el(*comp);
          if (!fp || !fq || !fc) continue;
          auto dcomp = dst->compose_at(*fp, i, *fq);
          if (!dcomp || !(*dcomp == *fc))
            rep.fail("morphism does not preserve " + src->element_name(p) + " o_" +
                     std::to_string(i) + " " + src->element_name(q));
        }
      }
    if (n >= 1) {
      for (const Perm& s : all_perms(n)) {
        auto ps = src->act(p, s);
        auto fp = on_el(p);
        if (!ps || !fp) continue;
        auto lhs = on_el(*ps);
        auto rhs = dst->act(*fp, s);
        if (!lhs || !rhs || !(*lhs == *rhs))
          rep.fail("morphism does not preserve the action on " + src->element_name(p));
      }
    }
  }
  return rep;
}

bool OperadMorphism::entrywise_bijective() const {
  for (int pid = 0; pid < src->profile_count(); ++pid) {
    Profile mapped;
    mapped.out = on_color(src->profile_of(pid).out);
    for (Color c : src->profile_of(pid).in) mapped.in.push_back(on_color(c));
    std::set<std::pair<int, int>> images;
    for (int i = 0; i < src->entry_size(pid); ++i) {
      auto img = on_el({pid, i});
      if (!img) return false;
      images.insert({img->pid, img->idx});
    }
    if (int(images.size()) != src->entry_size(pid)) return false;
    if (dst->entry_size(mapped) != src->entry_size(pid)) return false;
  }
  return true;
}

// ---------- named constructions ----------

namespace {

struct PermTables {
  std::vector<std::vector<Perm>> perms;  // per arity
  std::vector<std::map<Perm, int>> index;

  explicit PermTables(int bound) {
    perms.resize(bound + 1);
    index.resize(bound + 1);
    for (int n = 0; n <= bound; ++n) {
      perms[n] = all_perms(n);
      for (int i = 0; i < int(perms[n].size()); ++i) index[n][perms[n][i]] = i;
    }
  }
};

}  // namespace

SetOperad build_as(int arity_bound) {
  SetOperad o;
  o.set_arity_bound(arity_bound);
  Color star = o.add_color("*");
  auto tables = std::make_shared<PermTables>(arity_bound);
  for (int n = 0; n <= arity_bound; ++n) {
    Profile p{std::vector<Color>(n, star), star};
    for (const Perm& s : tables->perms[n]) {
      SetOperad::El e = o.add_element(p, perm_str(s));
      if (n == 1) o.set_unit(star, e);
    }
  }
  o.set_rules(
      [tables](const SetOperad& op, SetOperad::El p, int i,
               SetOperad::El q) -> std::optional<SetOperad::El> {
        int n = op.profile_of_el(p).arity(), m = op.profile_of_el(q).arity();
        const Perm& s = tables->perms[n][p.idx];
        const Perm& t = tables->perms[m][q.idx];
        std::vector<int> ks(n, 1);
        ks[i] = m;
        std::vector<Perm> sum(n, perm_id(1));
        sum[i] = t;
        Perm r = perm_compose(block_perm(s, ks), block_sum(sum));
        Profile rp{std::vector<Color>(n + m - 1, 0), 0};
        return SetOperad::El{op.profile_id(rp), tables->index[n + m - 1][r]};
      },
      [tables](const SetOperad& op, SetOperad::El p,
               const Perm& sigma) -> std::optional<SetOperad::El> {
        int n = op.profile_of_el(p).arity();
        Perm r = perm_compose(tables->perms[n][p.idx], sigma);
        return SetOperad::El{p.pid, tables->index[n][r]};
      });
  return o;
}

SetOperad build_com(int arity_bound) {
  SetOperad o;
  o.set_arity_bound(arity_bound);
  Color star = o.add_color("*");
  for (int n = 0; n <= arity_bound; ++n) {
    Profile p{std::vector<Color>(n, star), star};
    SetOperad::El e = o.add_element(p, "*");
    if (n == 1) o.set_unit(star, e);
  }
  o.set_rules(
      [](const SetOperad& op, SetOperad::El p, int,
         SetOperad::El q) -> std::optional<SetOperad::El> {
        int n = op.profile_of_el(p).arity(), m = op.profile_of_el(q).arity();
        Profile rp{std::vector<Color>(n + m - 1, 0), 0};
        return SetOperad::El{op.profile_id(rp), 0};
      },
      [](const SetOperad&, SetOperad::El p, const Perm&) -> std::optional<SetOperad::El> {
        return p;
      });
  return o;
}

SetOperad build_cdiag(const FinCategory& c, int arity_bound) {
  SetOperad o;
  o.set_arity_bound(arity_bound);
  for (Obj x = 0; x < c.object_count(); ++x) o.add_color(c.object_name(x));
  auto payload = std::make_shared<std::map<std::pair<int, int>, Mor>>();
  auto lookup = std::make_shared<std::map<Mor, SetOperad::El>>();
  for (Mor m = 0; m < c.morphism_count(); ++m) {
    Profile p{{c.dom(m)}, c.cod(m)};
    SetOperad::El e = o.add_element(p, c.morphism_name(m));
    (*payload)[{e.pid, e.idx}] = m;
    (*lookup)[m] = e;
  }
  for (Obj x = 0; x < c.object_count(); ++x) o.set_unit(x, (*lookup)[c.identity(x)]);
  const FinCategory* cat = &c;
  o.set_rules(
      [payload, lookup, cat](const SetOperad&, SetOperad::El p, int,
                             SetOperad::El q) -> std::optional<SetOperad::El> {
        Mor f = payload->at({p.pid, p.idx}), g = payload->at({q.pid, q.idx});
        auto fg = cat->compose(f, g);
        if (!fg) return std::nullopt;
        return lookup->at(*fg);
      },
      [](const SetOperad&, SetOperad::El p, const Perm&) -> std::optional<SetOperad::El> {
        return p;
      });
  return o;
}

std::string aqft_element_name(const Perm& sigma, const std::vector<std::string>& mor_names) {
  std::string s = "[" + perm_str(sigma) + "|";
  for (size_t i = 0; i < mor_names.size(); ++i)
    s += mor_names[i] + (i + 1 < mor_names.size() ? "," : "");
  return s + "]";
}

std::string pfa_element_name(const std::vector<std::string>& mor_names) {
  std::string s = "{";
  for (size_t i = 0; i < mor_names.size(); ++i)
    s += mor_names[i] + (i + 1 < mor_names.size() ? "," : "");
  return s + "}";
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::pair<Perm, std::vector<std::string>> parse_aqft_element_name(const std::string& name) {
  size_t bar = name.find('|');
  if (name.size() < 4 || name.front() != '[' || name.back() != ']' || bar == std::string::npos)
    throw std::invalid_argument("parse_aqft_element_name: bad format " + name);
  std::string permPart = name.substr(2, bar - 3);  // inside "(...)"
  Perm sigma;
  std::istringstream is(permPart);
  int v;
  while (is >> v) sigma.push_back(v);
  std::string morPart = name.substr(bar + 1, name.size() - bar - 2);
  return {sigma, split_commas(morPart)};
}

std::vector<std::string> parse_pfa_element_name(const std::string& name) {
  if (name.size() < 2 || name.front() != '{' || name.back() != '}')
    throw std::invalid_argument("parse_pfa_element_name: bad format " + name);
  return split_commas(name.substr(1, name.size() - 2));
}

namespace {

struct SigmaTupleData {
  const FinCategory* cat;
  std::vector<std::vector<std::pair<Perm, std::vector<Mor>>>> reps;
  std::map<std::tuple<Color, Perm, std::vector<Mor>>, SetOperad::El> lookup;

  const std::pair<Perm, std::vector<Mor>>& rep(SetOperad::El e) const { return reps[e.pid][e.idx]; }
};

std::vector<std::vector<Mor>> hom_tuples(const FinCategory& c, const Profile& p) {
  std::vector<std::vector<Mor>> out{{}};
  for (Color x : p.in) {
    std::vector<Mor> h = c.hom(x, p.out);
    std::vector<std::vector<Mor>> next;
    for (const auto& t : out)
      for (Mor m : h) {
        auto e = t;
        e.push_back(m);
        next.push_back(e);
      }
    out = std::move(next);
    if (out.empty()) break;
  }
  return out;
}

std::vector<std::string> mor_names(const FinCategory& c, const std::vector<Mor>& ms) {
  std::vector<std::string> out;
  for (Mor m : ms) out.push_back(c.morphism_name(m));
  return out;
}

std::vector<Profile> all_profiles(int num_colors, int arity_bound) {
  std::vector<Profile> profiles;
  for (Color d = 0; d < num_colors; ++d) {
    std::vector<std::vector<Color>> layer{{}};
    for (int n = 0; n <= arity_bound; ++n) {
      for (const auto& in : layer) profiles.push_back({in, d});
      std::vector<std::vector<Color>> next;
      for (const auto& in : layer)
        for (Color x = 0; x < num_colors; ++x) {
          auto e = in;
          e.push_back(x);
          next.push_back(e);
        }
      layer = std::move(next);
    }
  }
  return profiles;
}

std::pair<Perm, std::vector<Mor>> sigma_tuple_compose(const FinCategory& cat,
                                                      const std::pair<Perm, std::vector<Mor>>& p,
                                                      int i,
                                                      const std::pair<Perm, std::vector<Mor>>& q) {
  int n = int(p.second.size()), m = int(q.second.size());
  std::vector<int> ks(n, 1);
  ks[i] = m;
  std::vector<Perm> sum(n, perm_id(1));
  sum[i] = q.first;
  Perm r = perm_compose(block_perm(p.first, ks), block_sum(sum));
  std::vector<Mor> fs;
  for (int j = 0; j < n; ++j) {
    if (j == i) {
      for (Mor g : q.second) {
        auto fg = cat.compose(p.second[i], g);
        if (!fg) throw std::logic_error("sigma_tuple_compose: non-composable pair");
        fs.push_back(*fg);
      }
    } else {
      fs.push_back(p.second[j]);
    }
  }
  return {r, fs};
}

}  // namespace

SetOperad build_oc(const FinCategory& c, int arity_bound) {
  SetOperad o;
  o.set_arity_bound(arity_bound);
  for (Obj x = 0; x < c.object_count(); ++x) o.add_color(c.object_name(x));
  auto data = std::make_shared<SigmaTupleData>();
  data->cat = &c;
  for (const Profile& p : all_profiles(c.object_count(), arity_bound)) {
    auto tuples = hom_tuples(c, p);
    if (tuples.empty()) continue;
    for (const auto& fs : tuples)
      for (const Perm& s : all_perms(p.arity())) {
        SetOperad::El e = o.add_element(p, aqft_element_name(s, mor_names(c, fs)));
        if (int(data->reps.size()) <= e.pid) data->reps.resize(e.pid + 1);
        data->reps[e.pid].push_back({s, fs});
        data->lookup[{p.out, s, fs}] = e;
      }
  }
  for (Obj x = 0; x < c.object_count(); ++x)
    o.set_unit(x, data->lookup.at({x, perm_id(1), {c.identity(x)}}));
  o.set_rules(
      [data](const SetOperad& op, SetOperad::El p, int i,
             SetOperad::El q) -> std::optional<SetOperad::El> {
        auto comp = sigma_tuple_compose(*data->cat, data->rep(p), i, data->rep(q));
        return data->lookup.at({op.profile_of_el(p).out, comp.first, comp.second});
      },
      [data](const SetOperad& op, SetOperad::El p, const Perm& sigma) -> std::optional<SetOperad::El> {
        const auto& [s, fs] = data->rep(p);
        return data->lookup.at({op.profile_of_el(p).out, perm_compose(s, sigma), act_right(fs, sigma)});
      });
  return o;
}

SetOperad build_comc(const FinCategory& c, int arity_bound) {
  SetOperad o;
  o.set_arity_bound(arity_bound);
  for (Obj x = 0; x < c.object_count(); ++x) o.add_color(c.object_name(x));
  auto data = std::make_shared<SigmaTupleData>();
  data->cat = &c;
  for (const Profile& p : all_profiles(c.object_count(), arity_bound)) {
    auto tuples = hom_tuples(c, p);
    if (tuples.empty()) continue;
    for (const auto& fs : tuples) {
      SetOperad::El e = o.add_element(p, pfa_element_name(mor_names(c, fs)));
      if (int(data->reps.size()) <= e.pid) data->reps.resize(e.pid + 1);
      data->reps[e.pid].push_back({perm_id(p.arity()), fs});
      data->lookup[{p.out, perm_id(p.arity()), fs}] = e;
    }
  }
  for (Obj x = 0; x < c.object_count(); ++x)
    o.set_unit(x, data->lookup.at({x, perm_id(1), {c.identity(x)}}));
  o.set_rules(
      [data](const SetOperad& op, SetOperad::El p, int i,
             SetOperad::El q) -> std::optional<SetOperad::El> {
        auto comp = sigma_tuple_compose(*data->cat, data->rep(p), i, data->rep(q));
        return data->lookup.at(
            {op.profile_of_el(p).out, perm_id(int(comp.second.size())), comp.second});
      },
      [data](const SetOperad& op, SetOperad::El p, const Perm& sigma) -> std::optional<SetOperad::El> {
        const auto& [s, fs] = data->rep(p);
        return data->lookup.at({op.profile_of_el(p).out, perm_id(int(fs.size())), act_right(fs, sigma)});
      });
  return o;
}

SetOperad build_tree_operad(int num_colors, int edge_bound, int arity_bound) {
  SetOperad o;
  o.set_arity_bound(arity_bound);
  o.set_partial(true);
  for (int i = 0; i < num_colors; ++i) o.add_color(std::to_string(i));
  auto data = std::make_shared<std::vector<std::vector<PlanarTree>>>();
  auto lookup = std::make_shared<std::map<PlanarTree, SetOperad::El>>();
  for (const Profile& p : all_profiles(num_colors, arity_bound)) {
    for (const PlanarTree& t : enumerate_trees(num_colors, p, edge_bound)) {
      SetOperad::El e = o.add_element(p, t.str());
      if (int(data->size()) <= e.pid) data->resize(e.pid + 1);
      (*data)[e.pid].push_back(t);
      (*lookup)[t] = e;
    }
  }
  for (Color cc = 0; cc < num_colors; ++cc) o.set_unit(cc, lookup->at(PlanarTree::exceptional(cc)));
  int eb = edge_bound;
  o.set_rules(
      [data, lookup, eb](const SetOperad&, SetOperad::El p, int i,
                         SetOperad::El q) -> std::optional<SetOperad::El> {
        const PlanarTree& tp = (*data)[p.pid][p.idx];
        const PlanarTree& tq = (*data)[q.pid][q.idx];
        if (tp.is_exceptional()) return q;
        std::vector<PlanarTree> branches;
        Profile pp = tp.profile();
        for (int j = 0; j < pp.arity(); ++j)
          branches.push_back(j == i ? tq : PlanarTree::exceptional(pp.in[j]));
        PlanarTree res = graft(tp, branches);
        if (res.internal_edge_count() > eb) return std::nullopt;
        auto it = lookup->find(res);
        if (it == lookup->end()) return std::nullopt;
        return it->second;
      },
      [data, lookup](const SetOperad&, SetOperad::El p,
                     const Perm& sigma) -> std::optional<SetOperad::El> {
        const PlanarTree& tp = (*data)[p.pid][p.idx];
        auto it = lookup->find(reorder(tp, sigma));
        if (it == lookup->end()) return std::nullopt;
        return it->second;
      });
  return o;
}

namespace {

struct AqftData {
  const FinCategory* cat = nullptr;
  const OrthRelation* site = nullptr;
  std::vector<std::vector<std::pair<Perm, std::vector<Mor>>>> reps;
  std::map<std::tuple<Color, Perm, std::vector<Mor>>, SetOperad::El> lookup;

  std::vector<Perm> class_of(const Perm& sigma, const std::vector<Mor>& fs) const {
    std::set<Perm> seen{sigma};
    std::vector<Perm> queue{sigma};
    int n = int(sigma.size());
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      Perm cur = queue[qi];
      Perm inv = perm_inverse(cur);
      for (int k = 0; k + 1 < n; ++k) {
        Mor u = fs[inv[k]], v = fs[inv[k + 1]];
        if (!site->orthogonal(u, v)) continue;
        Perm t = perm_id(n);
        std::swap(t[k], t[k + 1]);
        Perm next = perm_compose(t, cur);
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    return queue;
  }
};

}  // namespace

SetOperad build_aqft_operad(const OrthRelation& site, int arity_bound) {
  const FinCategory& c = site.base();
  SetOperad o;
  o.set_arity_bound(arity_bound);
  for (Obj x = 0; x < c.object_count(); ++x) o.add_color(c.object_name(x));
  auto data = std::make_shared<AqftData>();
  data->cat = &c;
  data->site = &site;
  for (const Profile& p : all_profiles(c.object_count(), arity_bound)) {
    auto tuples = hom_tuples(c, p);
    if (tuples.empty()) continue;
    for (const auto& fs : tuples) {
      std::set<Perm> assigned;
      for (const Perm& s : all_perms(p.arity())) {
        if (assigned.count(s)) continue;
        auto cls = data->class_of(s, fs);
        Perm canon = s;
        for (const Perm& member : cls)
          if (member < canon) canon = member;
        SetOperad::El e = o.add_element(p, aqft_element_name(canon, mor_names(c, fs)));
        if (int(data->reps.size()) <= e.pid) data->reps.resize(e.pid + 1);
        data->reps[e.pid].push_back({canon, fs});
        for (const Perm& member : cls) {
          assigned.insert(member);
          data->lookup[{p.out, member, fs}] = e;
          if (!(member == canon)) o.add_alias(p, aqft_element_name(member, mor_names(c, fs)), e);
        }
      }
    }
  }
  for (Obj x = 0; x < c.object_count(); ++x)
    o.set_unit(x, data->lookup.at({x, perm_id(1), {c.identity(x)}}));
  o.set_rules(
      [data](const SetOperad& op, SetOperad::El p, int i,
             SetOperad::El q) -> std::optional<SetOperad::El> {
        auto comp =
            sigma_tuple_compose(*data->cat, data->reps[p.pid][p.idx], i, data->reps[q.pid][q.idx]);
        return data->lookup.at({op.profile_of_el(p).out, comp.first, comp.second});
      },
      [data](const SetOperad& op, SetOperad::El p, const Perm& sigma) -> std::optional<SetOperad::El> {
        const auto& [s, fs] = data->reps[p.pid][p.idx];
        return data->lookup.at({op.profile_of_el(p).out, perm_compose(s, sigma), act_right(fs, sigma)});
      });
  return o;
}

SetOperad build_pfa_operad(const ConfiguredStructure& site) {
  const FinCategory& c = site.base();
  SetOperad o;
  o.set_arity_bound(site.arity_bound());
  for (Obj x = 0; x < c.object_count(); ++x) o.add_color(c.object_name(x));
  auto data = std::make_shared<std::vector<std::vector<Config>>>();
  auto lookup = std::make_shared<std::map<std::pair<Obj, Config>, SetOperad::El>>();
  for (const auto& [t, cfg] : site.all()) {
    Profile p;
    p.out = t;
    for (Mor m : cfg) p.in.push_back(c.dom(m));
    SetOperad::El e = o.add_element(p, pfa_element_name(mor_names(c, cfg)));
    if (int(data->size()) <= e.pid) data->resize(e.pid + 1);
    (*data)[e.pid].push_back(cfg);
    (*lookup)[{t, cfg}] = e;
  }
  for (Obj x = 0; x < c.object_count(); ++x) o.set_unit(x, lookup->at({x, {c.identity(x)}}));
  const FinCategory* cat = &c;
  o.set_rules(
      [data, lookup, cat](const SetOperad& op, SetOperad::El p, int i,
                          SetOperad::El q) -> std::optional<SetOperad::El> {
        const Config& f = (*data)[p.pid][p.idx];
        const Config& g = (*data)[q.pid][q.idx];
        Config comp;
        for (int j = 0; j < int(f.size()); ++j) {
          if (j == i) {
            for (Mor gk : g) {
              auto fg = cat->compose(f[j], gk);
              if (!fg) throw std::logic_error("pfa composition: non-composable pair");
              comp.push_back(*fg);
            }
          } else {
            comp.push_back(f[j]);
          }
        }
        Obj target = op.profile_of_el(p).out;
        auto it = lookup->find({target, comp});
        if (it == lookup->end())
          throw std::logic_error("pfa composition escaped the configured structure");
        return it->second;
      },
      [data, lookup](const SetOperad& op, SetOperad::El p,
                     const Perm& sigma) -> std::optional<SetOperad::El> {
        const Config& f = (*data)[p.pid][p.idx];
        return lookup->at({op.profile_of_el(p).out, act_right(f, sigma)});
      });
  return o;
}

OperadMorphism comparison_delta(const ConfiguredStructure& site, const SetOperad& pfa,
                                const SetOperad& aqft) {
  (void)site;
  OperadMorphism m;
  m.src = &pfa;
  m.dst = &aqft;
  m.on_color = [](Color c) { return c; };
  const SetOperad* src = &pfa;
  const SetOperad* dst = &aqft;
  m.on_el = [src, dst](SetOperad::El e) -> std::optional<SetOperad::El> {
    const Profile& p = src->profile_of_el(e);
    std::string nm = src->element_name(e);
    std::vector<std::string> parts;
    std::string inner = nm.substr(1, nm.size() - 2);
    size_t pos = 0;
    while (pos < inner.size()) {
      size_t comma = inner.find(',', pos);
      if (comma == std::string::npos) {
        parts.push_back(inner.substr(pos));
        break;
      }
      parts.push_back(inner.substr(pos, comma - pos));
      pos = comma + 1;
    }
    return dst->resolve(p, aqft_element_name(perm_id(p.arity()), parts));
  };
  return m;
}

OperadMorphism name_matching_morphism(const SetOperad& src, const SetOperad& dst) {
  OperadMorphism m;
  m.src = &src;
  m.dst = &dst;
  const SetOperad* s = &src;
  const SetOperad* d = &dst;
  m.on_color = [s, d](Color c) {
    auto x = d->color_by_name(s->color_name(c));
    if (!x) throw std::invalid_argument("name_matching_morphism: missing color");
    return *x;
  };
  auto onc = m.on_color;
  m.on_el = [s, d, onc](SetOperad::El e) -> std::optional<SetOperad::El> {
    Profile p = s->profile_of_el(e);
    Profile q;
    q.out = onc(p.out);
    for (Color c : p.in) q.in.push_back(onc(c));
    return d->resolve(q, s->element_name(e));
  };
  return m;
}

CheckReport compare_entrywise(const SetOperad& a, const SetOperad& b) {
  CheckReport rep;
  OperadMorphism ab = name_matching_morphism(a, b);
  OperadMorphism ba = name_matching_morphism(b, a);
  rep.merge(ab.check(), "a->b");
  rep.merge(ba.check(), "b->a");
  rep.require(ab.entrywise_bijective(), "a->b not entrywise bijective");
  rep.require(ba.entrywise_bijective(), "b->a not entrywise bijective");
  return rep;
}

bool DecoratedTree::operator==(const DecoratedTree& o) const {
  return tree == o.tree && phi == o.phi;
}

bool DecoratedTree::operator<(const DecoratedTree& o) const {
  if (tree < o.tree) return true;
  if (o.tree < tree) return false;
  return phi < o.phi;
}

std::string DecoratedTree::str(const SetOperad& base) const {
  std::ostringstream os;
  os << tree.str() << "@[";
  for (size_t i = 0; i < phi.size(); ++i) {
    if (phi[i].inverse) os << "inv:";
    os << base.element_name(phi[i].el) << (i + 1 < phi.size() ? " " : "");
  }
  os << "]";
  return os.str();
}

}  // namespace opal
