#include "opal/json_io.hpp"

#include <stdexcept>

namespace opal {

Json matrix_to_json(const QMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational_str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

QMat matrix_from_json(const Json& j) {
  QMat m(j.at("rows").get<int>(), j.at("cols").get<int>());
  const Json& data = j.at("data");
  for (int i = 0; i < m.rows(); ++i)
    for (int c = 0; c < m.cols(); ++c) m.at(i, c) = parse_rational(data.at(i).at(c).get<std::string>());
  return m;
}

Json category_to_json(const FinCategory& c) {
  Json objects = Json::array();
  for (Obj o = 0; o < c.object_count(); ++o) objects.push_back(c.object_name(o));
  Json morphisms = Json::array();
  for (Mor m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    morphisms.push_back(Json{{"name", c.morphism_name(m)},
                             {"dom", c.object_name(c.dom(m))},
                             {"cod", c.object_name(c.cod(m))}});
  }
  Json composites = Json::array();
  for (Mor f = 0; f < c.morphism_count(); ++f)
    for (Mor g = 0; g < c.morphism_count(); ++g) {
      if (c.is_identity(f) || c.is_identity(g)) continue;
      auto gf = c.compose(g, f);
      if (gf) composites.push_back(Json::array({c.morphism_name(g), c.morphism_name(f), c.morphism_name(*gf)}));
    }
  return Json{{"objects", objects}, {"morphisms", morphisms}, {"composites", composites}};
}

FinCategory category_from_json(const Json& j) {
  FinCategory c;
  for (const auto& o : j.at("objects")) c.add_object(o.get<std::string>());
  for (const auto& m : j.at("morphisms")) {
    auto dom = c.object_by_name(m.at("dom").get<std::string>());
    auto cod = c.object_by_name(m.at("cod").get<std::string>());
    if (!dom || !cod) throw std::invalid_argument("category: unknown object in morphism " +
                                                  m.at("name").get<std::string>());
    c.add_morphism(m.at("name").get<std::string>(), *dom, *cod);
  }
  c.freeze();
  if (j.contains("composites"))
    for (const auto& t : j.at("composites")) {
      auto g = c.morphism_by_name(t.at(0).get<std::string>());
      auto f = c.morphism_by_name(t.at(1).get<std::string>());
      auto gf = c.morphism_by_name(t.at(2).get<std::string>());
      if (!g || !f || !gf) throw std::invalid_argument("category: unknown morphism in composite");
      c.set_composite(*g, *f, *gf);
    }
  return c;
}

Json orth_to_json(const OrthRelation& o) {
  const FinCategory& c = o.base();
  Json pairs = Json::array();
  for (auto [f, g] : o.pairs())
    if (f <= g) pairs.push_back(Json::array({c.morphism_name(f), c.morphism_name(g)}));
  return Json{{"orth", pairs}};
}

OrthRelation orth_from_json(const Json& j, const FinCategory& c) {
  std::vector<std::pair<Mor, Mor>> gens;
  for (const auto& p : j.at("orth")) {
    auto f = c.morphism_by_name(p.at(0).get<std::string>());
    auto g = c.morphism_by_name(p.at(1).get<std::string>());
    if (!f || !g) throw std::invalid_argument("site: unknown morphism in orth generator");
    gens.push_back({*f, *g});
  }
  return close_orthogonality(c, gens);
}

Json config_to_json(const ConfiguredStructure& k) {
  const FinCategory& c = k.base();
  Json cfgs = Json::array();
  for (const auto& [t, cfg] : k.all()) {
    if (cfg.size() < 2) continue;  // singletons and empties are implied
    Json entry = Json::array();
    for (Mor m : cfg) entry.push_back(c.morphism_name(m));
    cfgs.push_back(std::move(entry));
  }
  return Json{{"config", cfgs}, {"arityBound", k.arity_bound()}};
}

ConfiguredStructure config_from_json(const Json& j, const FinCategory& c) {
  std::vector<Config> gens;
  for (const auto& g : j.at("config")) {
    Config cfg;
    for (const auto& n : g) {
      auto m = c.morphism_by_name(n.get<std::string>());
      if (!m) throw std::invalid_argument("site: unknown morphism in configuration");
      cfg.push_back(*m);
    }
    gens.push_back(std::move(cfg));
  }
  int bound = j.value("arityBound", 4);
  return close_configurations(c, gens, bound);
}

Json operad_to_json(const SetOperad& o) {
  Json colors = Json::array();
  for (Color c = 0; c < o.color_count(); ++c) colors.push_back(o.color_name(c));
  Json entries = Json::array();
  for (int pid = 0; pid < o.profile_count(); ++pid) {
    if (o.entry_size(pid) == 0) continue;
    const Profile& p = o.profile_of(pid);
    Json in = Json::array();
    for (Color c : p.in) in.push_back(o.color_name(c));
    Json els = Json::array();
    for (int i = 0; i < o.entry_size(pid); ++i) els.push_back(o.element_name({pid, i}));
    entries.push_back(Json{{"inputs", in}, {"output", o.color_name(p.out)}, {"elements", els}});
  }
  Json units = Json::object();
  for (Color c = 0; c < o.color_count(); ++c) units[o.color_name(c)] = o.element_name(o.unit(c));
  Json comps = Json::array();
  Json acts = Json::array();
  for (const auto& p : o.all_elements()) {
    const Profile& pp = o.profile_of_el(p);
    for (int i = 0; i < pp.arity(); ++i)
      for (int qp = 0; qp < o.profile_count(); ++qp) {
        if (o.profile_of(qp).out != pp.in[i]) continue;
        for (int qi = 0; qi < o.entry_size(qp); ++qi) {
          auto r = o.compose_at(p, i, {qp, qi});
          if (!r) continue;
          comps.push_back(Json::array({profile_str(pp), o.element_name(p), i,
                                       profile_str(o.profile_of(qp)), o.element_name({qp, qi}),
                                       o.element_name(*r)}));
        }
      }
    int n = pp.arity();
    if (n >= 2)
      for (const Perm& s : all_perms(n)) {
        auto r = o.act(p, s);
        if (!r) continue;
        Json perm = Json::array();
        for (int v : s) perm.push_back(v);
        acts.push_back(Json::array({profile_str(pp), o.element_name(p), perm, o.element_name(*r)}));
      }
  }
  return Json{{"colors", colors},     {"arityBound", o.arity_bound()}, {"partial", o.partial()},
              {"entries", entries},   {"units", units},                {"compositions", comps},
              {"actions", acts}};
}

SetOperad operad_from_json(const Json& j) {
  SetOperad o;
  o.set_arity_bound(j.value("arityBound", 4));
  o.set_partial(j.value("partial", false));
  for (const auto& c : j.at("colors")) o.add_color(c.get<std::string>());
  auto color_of = [&](const std::string& n) {
    auto c = o.color_by_name(n);
    if (!c) throw std::invalid_argument("operad: unknown color " + n);
    return *c;
  };
  std::vector<std::pair<Profile, std::string>> byProfile;
  for (const auto& e : j.at("entries")) {
    Profile p;
    p.out = color_of(e.at("output").get<std::string>());
    for (const auto& c : e.at("inputs")) p.in.push_back(color_of(c.get<std::string>()));
    for (const auto& n : e.at("elements")) o.add_element(p, n.get<std::string>());
  }
  for (auto it = j.at("units").begin(); it != j.at("units").end(); ++it) {
    Color c = color_of(it.key());
    auto e = o.element_by_name(Profile{{c}, c}, it.value().get<std::string>());
    if (!e) throw std::invalid_argument("operad: unknown unit element for " + it.key());
    o.set_unit(c, *e);
  }
  // table-backed rules
  auto parse_profile = [&](const std::string& s) {
    // "(c1,c2;d)" with color names
    Profile p;
    size_t semi = s.find(';');
    std::string ins = s.substr(1, semi - 1);
    std::string outs = s.substr(semi + 1, s.size() - semi - 2);
    p.out = color_of(outs);
    size_t pos = 0;
    while (pos < ins.size()) {
      size_t comma = ins.find(',', pos);
      std::string tok = comma == std::string::npos ? ins.substr(pos) : ins.substr(pos, comma - pos);
      if (!tok.empty()) p.in.push_back(color_of(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return p;
  };
  auto comp = std::make_shared<std::map<std::tuple<int, int, int, int, int>, SetOperad::El>>();
  auto act = std::make_shared<std::map<std::tuple<int, int, Perm>, SetOperad::El>>();
  for (const auto& row : j.at("compositions")) {
    Profile pp = parse_profile(row.at(0).get<std::string>());
    Profile qq = parse_profile(row.at(3).get<std::string>());
    int i = row.at(2).get<int>();
    auto p = o.element_by_name(pp, row.at(1).get<std::string>());
    auto q = o.element_by_name(qq, row.at(4).get<std::string>());
    Profile rr = profile_compose_at(pp, i, qq);
    auto r = o.element_by_name(rr, row.at(5).get<std::string>());
    if (!p || !q || !r) throw std::invalid_argument("operad: unresolved composition row");
    (*comp)[{p->pid, p->idx, i, q->pid, q->idx}] = *r;
  }
  for (const auto& row : j.at("actions")) {
    Profile pp = parse_profile(row.at(0).get<std::string>());
    auto p = o.element_by_name(pp, row.at(1).get<std::string>());
    Perm s;
    for (const auto& v : row.at(2)) s.push_back(v.get<int>());
    Profile rr{act_right(pp.in, s), pp.out};
    auto r = o.element_by_name(rr, row.at(3).get<std::string>());
    if (!p || !r) throw std::invalid_argument("operad: unresolved action row");
    (*act)[{p->pid, p->idx, s}] = *r;
  }
  o.set_rules(
      [comp](const SetOperad&, SetOperad::El p, int i, SetOperad::El q)
          -> std::optional<SetOperad::El> {
        auto it = comp->find({p.pid, p.idx, i, q.pid, q.idx});
        if (it == comp->end()) return std::nullopt;
        return it->second;
      },
      [act](const SetOperad& op, SetOperad::El p, const Perm& s) -> std::optional<SetOperad::El> {
        if (op.profile_of_el(p).arity() < 2) return p;
        auto it = act->find({p.pid, p.idx, s});
        if (it == act->end()) return std::nullopt;
        return it->second;
      });
  return o;
}

Json algebra_to_json(const VectAlgebra& x) {
  const SetOperad& o = x.operad();
  Json dims = Json::object();
  for (Color c = 0; c < o.color_count(); ++c) dims[o.color_name(c)] = x.dim(c);
  Json maps = Json::array();
  for (const auto& e : o.all_elements()) {
    const Profile& p = o.profile_of_el(e);
    Json in = Json::array();
    for (Color c : p.in) in.push_back(o.color_name(c));
    maps.push_back(Json{{"inputs", in},
                        {"output", o.color_name(p.out)},
                        {"element", o.element_name(e)},
                        {"matrix", matrix_to_json(x.map_of(e))}});
  }
  return Json{{"dims", dims}, {"maps", maps}};
}

VectAlgebra algebra_from_json(const Json& j, const SetOperad& o) {
  VectAlgebra x(&o);
  for (auto it = j.at("dims").begin(); it != j.at("dims").end(); ++it) {
    auto c = o.color_by_name(it.key());
    if (!c) throw std::invalid_argument("algebra: unknown color " + it.key());
    x.set_dim(*c, it.value().get<int>());
  }
  for (const auto& m : j.at("maps")) {
    Profile p;
    auto out = o.color_by_name(m.at("output").get<std::string>());
    if (!out) throw std::invalid_argument("algebra: unknown output color");
    p.out = *out;
    for (const auto& c : m.at("inputs")) {
      auto cc = o.color_by_name(c.get<std::string>());
      if (!cc) throw std::invalid_argument("algebra: unknown input color");
      p.in.push_back(*cc);
    }
    auto e = o.resolve(p, m.at("element").get<std::string>());
    if (!e) throw std::invalid_argument("algebra: unknown element " + m.at("element").get<std::string>());
    x.set_map(*e, matrix_from_json(m.at("matrix")));
  }
  return x;
}

Json aqft_to_json(const AqftModel& m) {
  const FinCategory& c = *m.cat;
  Json objects = Json::object();
  for (Obj o = 0; o < c.object_count(); ++o) {
    Json unit = Json::array();
    for (const auto& q : m.unit[o]) unit.push_back(rational_str(q));
    objects[c.object_name(o)] =
        Json{{"dim", m.dims[o]}, {"mult", matrix_to_json(m.mult[o])}, {"unit", unit}};
  }
  Json morphisms = Json::object();
  for (Mor f = 0; f < c.morphism_count(); ++f)
    morphisms[c.morphism_name(f)] = matrix_to_json(m.morph[f]);
  return Json{{"objects", objects}, {"morphisms", morphisms}};
}

AqftModel aqft_from_json(const Json& j, const FinCategory& c) {
  AqftModel m;
  m.cat = &c;
  m.dims.assign(c.object_count(), 0);
  m.mult.resize(c.object_count());
  m.unit.resize(c.object_count());
  m.morph.resize(c.morphism_count());
  for (auto it = j.at("objects").begin(); it != j.at("objects").end(); ++it) {
    auto o = c.object_by_name(it.key());
    if (!o) throw std::invalid_argument("aqft: unknown object " + it.key());
    m.dims[*o] = it.value().at("dim").get<int>();
    m.mult[*o] = matrix_from_json(it.value().at("mult"));
    for (const auto& q : it.value().at("unit")) m.unit[*o].push_back(parse_rational(q.get<std::string>()));
  }
  for (auto it = j.at("morphisms").begin(); it != j.at("morphisms").end(); ++it) {
    auto f = c.morphism_by_name(it.key());
    if (!f) throw std::invalid_argument("aqft: unknown morphism " + it.key());
    m.morph[*f] = matrix_from_json(it.value());
  }
  return m;
}

Json report_to_json(const CheckReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(f);
  return Json{{"ok", r.ok()}, {"failures", failures}};
}

}  // namespace opal
