#include "xg/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "xg/errors.hpp"

namespace xg {

namespace {

Json words_json(const std::vector<Word>& ws, const Alphabet& a) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(to_string(w, a));
  return out;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ArgumentError(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

}  // namespace

Json to_json(const Presentation& p) {
  const Alphabet& a = p.generators();
  Json gens = Json::array();
  for (const auto& s : a.symbols()) gens.push_back(s.text());
  Json j;
  j["version"] = kSchemaVersion;
  j["generators"] = gens;
  j["relators"] = words_json(p.relators(), a);
  j["meta"] = {{"witness_policy", p.meta.witness_policy},
               {"may_be_proper_preimage", p.meta.may_be_proper_preimage}};
  if (p.lifting) {
    j["lifting"] = {{"central_gens", p.lifting->central_gens},
                    {"sigma", words_json(p.lifting->sigma, a)}};
  }
  return j;
}

Presentation presentation_from_json(const Json& j) {
  if (j.contains("version") && field<std::string>(j, "version") != kSchemaVersion)
    throw ArgumentError("unsupported presentation schema version");
  Alphabet a;
  for (const auto& g : field<std::vector<std::string>>(j, "generators")) {
    bool barred = !g.empty() && g.back() == '~';
    a.add(GenSymbol{barred ? g.substr(0, g.size() - 1) : g, barred});
  }
  std::vector<Word> rels;
  for (const auto& r : field<std::vector<std::string>>(j, "relators")) rels.push_back(parse_word(r, a));
  Presentation p(a, rels);
  if (j.contains("meta")) {
    const Json& m = j.at("meta");
    if (m.contains("witness_policy")) p.meta.witness_policy = field<std::string>(m, "witness_policy");
    if (m.contains("may_be_proper_preimage"))
      p.meta.may_be_proper_preimage = field<bool>(m, "may_be_proper_preimage");
  }
  if (j.contains("lifting")) {
    const Json& l = j.at("lifting");
    LiftingData d;
    d.central_gens = field<std::vector<std::string>>(l, "central_gens");
    for (const auto& s : field<std::vector<std::string>>(l, "sigma")) d.sigma.push_back(parse_word(s, a));
    p.lifting = std::move(d);
  }
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    return presentation_from_json(j);
  }
  return parse_presentation(text);
}

Json to_json(const AreaCertificate& c, const Alphabet& a) {
  Json factors = Json::array();
  for (const auto& f : c.factors)
    factors.push_back({{"theta", to_string(f.theta, a)}, {"relator", f.relator}, {"sign", f.sign}});
  Json j;
  j["word"] = to_string(c.word, a);
  j["factors"] = factors;
  j["area"] = c.area();
  j["radius"] = c.radius();
  return j;
}

AreaCertificate certificate_from_json(const Json& j, const Alphabet& a) {
  AreaCertificate c;
  c.word = parse_word(field<std::string>(j, "word"), a);
  if (!j.contains("factors") || !j.at("factors").is_array()) throw ArgumentError("missing factor list");
  for (const auto& f : j.at("factors")) {
    CertificateFactor cf{parse_word(field<std::string>(f, "theta"), a), field<std::size_t>(f, "relator"),
                         field<int>(f, "sign")};
    if (cf.sign != 1 && cf.sign != -1) throw ArgumentError("factor sign must be 1 or -1");
    c.factors.push_back(std::move(cf));
  }
  return c;
}

Json to_json(const CosetTable& t, const Alphabet& a) {
  Json gens = Json::object();
  for (std::size_t i = 0; i < t.rank(); ++i) gens[a.symbol(i).text()] = t.generator_permutation(i).images();
  Json j;
  j["n_cosets"] = t.size();
  j["generators"] = gens;
  return j;
}

Json growth_json(const std::vector<Word>& gens, const Alphabet& a,
                 const std::vector<std::size_t>& sizes, const GrowthClass& g) {
  Json radii = Json::array();
  for (std::size_t i = 0; i < sizes.size(); ++i) radii.push_back(i);
  Json cls;
  switch (g.kind) {
    case GrowthClass::Kind::polynomial: cls = {{"kind", "PolynomialDegree"}, {"degree", g.degree}}; break;
    case GrowthClass::Kind::exponential: cls = {{"kind", "ExponentialRate"}, {"rate", g.rate}}; break;
    case GrowthClass::Kind::inconclusive: cls = {{"kind", "Inconclusive"}}; break;
  }
  Json j;
  j["generators"] = words_json(gens, a);
  j["radii"] = radii;
  j["sizes"] = sizes;
  j["classification"] = cls;
  j["heuristic_flag"] = g.heuristic;
  return j;
}

Presentation central_quotient(const Presentation& total, const std::vector<std::string>& central) {
  const Alphabet& ta = total.generators();
  std::set<std::size_t> drop;
  for (const auto& name : central) {
    auto idx = ta.find(GenSymbol{name, false});
    if (!idx) throw ArgumentError("central generator " + name + " not in presentation");
    drop.insert(*idx);
  }
  Alphabet qa;
  std::vector<Word> images(ta.size());
  for (std::size_t i = 0; i < ta.size(); ++i)
    if (!drop.count(i)) images[i] = Word(letter_of(qa.add(ta.symbol(i))));
  std::vector<Word> rels;
  for (const auto& r : total.relators()) {
    Word q = substitute(r, images).cyclic_reduction();
    if (!q.empty()) rels.push_back(q);
  }
  return Presentation(qa, rels);
}

}  // namespace xg
