#include "locdens/serialize.hpp"

namespace locdens {

namespace {

json poly_json(const Poly& p) {
  json out = json::array();
  for (const Rational& c : p) out.push_back(to_string(c));
  return out;
}

Rational parse_rational_text(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  if (q.get_den() == 0) throw ArithmeticError("zero denominator");
  return q;
}

Poly poly_from_json(const json& j) {
  Poly p;
  for (const auto& c : j) p.push_back(parse_rational_text(c.get<std::string>()));
  return poly_trim(std::move(p));
}

}  // namespace

json to_json_value(const BigInt& x) { return x.get_str(); }

BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  BigInt x;
  if (x.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad integer");
  return x;
}

json to_json_value(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const json& j) {
  return make_rational(big_from_json(j.at("num")), big_from_json(j.at("den")));
}

void to_json(json& j, const HalfLiftCertificate& c) {
  j = json{{"d", c.d},
           {"n", c.n},
           {"a", to_json_value(c.a)},
           {"solutions_n", to_json_value(c.solutions_n)},
           {"solutions_next", to_json_value(c.solutions_next)},
           {"lifting_classes", to_json_value(c.lifting_classes)},
           {"orbit_pairs", to_json_value(c.orbit_pairs)},
           {"fibre_sizes", c.fibre_sizes_seen},
           {"hypotheses_ok", c.hypotheses_ok},
           {"failed_hypotheses", c.failed_hypotheses},
           {"involution_ok", c.involution_ok},
           {"toggle_ok", c.toggle_ok},
           {"fibres_ok", c.fibres_ok},
           {"holds", c.holds}};
  if (c.ratio) {
    j["ratio_num"] = to_json_value(BigInt(c.ratio->get_num()));
    j["ratio_den"] = to_json_value(BigInt(c.ratio->get_den()));
  } else {
    j["ratio_num"] = nullptr;
    j["ratio_den"] = nullptr;
  }
}

void from_json(const json& j, HalfLiftCertificate& c) {
  c.d = j.at("d").get<unsigned>();
  c.n = j.at("n").get<unsigned>();
  c.a = big_from_json(j.at("a"));
  c.solutions_n = big_from_json(j.at("solutions_n"));
  c.solutions_next = big_from_json(j.at("solutions_next"));
  c.lifting_classes = big_from_json(j.at("lifting_classes"));
  c.orbit_pairs = big_from_json(j.at("orbit_pairs"));
  c.fibre_sizes_seen = j.at("fibre_sizes").get<std::set<unsigned>>();
  c.hypotheses_ok = j.at("hypotheses_ok").get<bool>();
  c.failed_hypotheses = j.at("failed_hypotheses").get<std::vector<std::string>>();
  c.involution_ok = j.at("involution_ok").get<bool>();
  c.toggle_ok = j.at("toggle_ok").get<bool>();
  c.fibres_ok = j.at("fibres_ok").get<bool>();
  c.holds = j.at("holds").get<bool>();
  if (j.at("ratio_num").is_null()) {
    c.ratio.reset();
  } else {
    c.ratio = make_rational(big_from_json(j.at("ratio_num")), big_from_json(j.at("ratio_den")));
  }
}

void to_json(json& j, const DescentReport& r) {
  j = json{{"n", r.n},
           {"a", to_json_value(r.a)},
           {"lhs", to_json_value(r.lhs)},
           {"rhs", to_json_value(r.rhs)},
           {"all_even", r.all_even},
           {"holds", r.holds}};
}

void to_json(json& j, const DensityResult& d) {
  j = json{{"normalization", std::string(to_string(d.normalization))}};
  if (const auto* v = std::get_if<DensityValue>(&d.outcome)) {
    j["alpha"] = to_json_value(v->alpha);
    j["stabilized_at"] = v->stabilized_at;
    j["provenance"] = std::string(to_string(v->provenance));
  } else if (const auto* div = std::get_if<Diverges>(&d.outcome)) {
    j["alpha"] = {{"status", "diverges"}, {"description", div->description}};
    j["stabilized_at"] = nullptr;
    j["provenance"] = "singular";
  } else {
    const auto& osc = std::get<Oscillates>(d.outcome);
    json values = json::array();
    for (const Rational& q : osc.values) values.push_back(to_json_value(q));
    j["alpha"] = {{"status", "oscillates"}, {"values", values}};
    j["stabilized_at"] = nullptr;
    j["provenance"] = "singular";
  }
}

void from_json(const json& j, DensityResult& d) {
  d.normalization = j.at("normalization").get<std::string>() == "q" ? Normalization::q
                                                                      : Normalization::Q;
  const json& alpha = j.at("alpha");
  if (alpha.contains("status")) {
    const std::string status = alpha.at("status").get<std::string>();
    if (status == "diverges") {
      d.outcome = Diverges{alpha.at("description").get<std::string>()};
    } else {
      Oscillates o;
      for (const auto& v : alpha.at("values")) o.values.push_back(rational_from_json(v));
      d.outcome = o;
    }
    return;
  }
  DensityValue v;
  v.alpha = rational_from_json(alpha);
  v.stabilized_at = j.at("stabilized_at").get<unsigned>();
  const std::string prov = j.at("provenance").get<std::string>();
  v.provenance = prov == "structural-zero" ? Provenance::structural_zero
                 : prov == "stabilized"    ? Provenance::stabilized
                                           : Provenance::closed_form;
  d.outcome = v;
}

void to_json(json& j, const RationalSeries& s) {
  json initial = json::array();
  for (const Rational& c : s.initial) initial.push_back(to_string(c));
  j = json{{"initial", initial}, {"num", poly_json(s.numerator)}, {"den", poly_json(s.denominator)}};
}

void from_json(const json& j, RationalSeries& s) {
  s.initial.clear();
  for (const auto& c : j.at("initial")) s.initial.push_back(parse_rational_text(c.get<std::string>()));
  s.numerator = poly_from_json(j.at("num"));
  s.denominator = poly_from_json(j.at("den"));
}

void to_json(json& j, const Stratum& s) {
  j = json{{"tail", s.tail},
           {"valuation", s.valuation},
           {"unit_class", s.unit_class},
           {"partner_valuation", s.partner_valuation},
           {"partner_unit_class", s.partner_unit_class},
           {"class_count", to_json_value(s.class_count)},
           {"representative", to_json_value(s.representative)},
           {"count_L", to_json_value(s.per_residue_count_L)},
           {"count_M", to_json_value(s.per_residue_count_M)}};
}

void to_json(json& j, const StratifiedCount& s) {
  j = json{{"value", to_json_value(s.value)}, {"strata", s.strata}};
}

json constraints_json(const std::vector<Constraint>& cs) {
  json out = json::array();
  for (const Constraint& c : cs) {
    json item{{"text", to_string(c)}};
    if (const auto* x = std::get_if<ValuationAtLeast>(&c)) {
      item["kind"] = "valuation_at_least";
      item["bound"] = x->bound;
    } else if (const auto* x = std::get_if<ValuationParity>(&c)) {
      item["kind"] = "valuation_parity";
      item["offset"] = x->offset;
      item["parity"] = x->parity;
    } else if (const auto* x = std::get_if<UnitSquareClass>(&c)) {
      item["kind"] = "unit_square_class";
      item["u"] = to_json_value(x->u);
    } else {
      item["kind"] = "three_square_class";
      item["shift"] = std::get<ThreeSquareClass>(c).shift;
    }
    out.push_back(item);
  }
  return out;
}

void to_json(json& j, const ThresholdInfo& info) {
  j = json{{"stable_m", info.stable_m}};
  if (info.vanishing) {
    j["vanishing"]["Q"] = constraints_json(info.vanishing->Q);
    j["vanishing"]["q"] =
        info.vanishing->q ? constraints_json(*info.vanishing->q) : json(nullptr);
  }
}

}  // namespace locdens
