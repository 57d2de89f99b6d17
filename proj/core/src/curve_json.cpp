#include "nkcp3/curve_json.hpp"

#include "nkcp3/error.hpp"

namespace nkcp3 {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::kInvalidArgument, "curve object: " + what); }

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing \"") + key + "\"");
  return *it;
}

RatExpr expr_field(const json& j) {
  if (!j.is_string()) bad("expression must be a string");
  return parse_expr(j.get<std::string>());
}

Complex complex_field(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) bad("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json curve_to_json(const CurveExpr& c) {
  switch (c.kind()) {
    case CurveExpr::Kind::kWeierstrass:
      return {{"kind", "weierstrass"}, {"f", to_string(c.f())}, {"g", to_string(c.g())}};
    case CurveExpr::Kind::kExplicit: {
      json comps = json::array();
      for (const RatExpr& e : c.components()) comps.push_back(to_string(e));
      return {{"kind", "explicit"}, {"components", comps}};
    }
    case CurveExpr::Kind::kFiber: {
      json base = json::array();
      for (Complex v : c.base().c) base.push_back({v.real(), v.imag()});
      return {{"kind", "fiber"}, {"base", base}};
    }
    case CurveExpr::Kind::kPartner:
      return {{"kind", "partner"}, {"inner", curve_to_json(c.inner())}};
  }
  bad("unknown kind");
}

CurveExpr curve_from_json(const json& j) {
  if (!j.is_object()) bad("expected an object");
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "weierstrass") return CurveExpr::weierstrass(expr_field(field(j, "f")), expr_field(field(j, "g")));
  if (k == "explicit") {
    const json& comps = field(j, "components");
    if (!comps.is_array() || comps.size() != 4) bad("\"components\" must hold 4 expressions");
    std::array<RatExpr, 4> e;
    for (int i = 0; i < 4; ++i) e[i] = expr_field(comps[i]);
    return CurveExpr::explicit_curve(e);
  }
  if (k == "fiber") {
    const json& base = field(j, "base");
    if (!base.is_array() || base.size() != 4) bad("\"base\" must hold 4 complex numbers");
    HVec v;
    for (int i = 0; i < 4; ++i) v.c[i] = complex_field(base[i]);
    return CurveExpr::fiber(v);
  }
  if (k == "partner") return CurveExpr::partner(curve_from_json(field(j, "inner")));
  bad("unknown kind \"" + k + "\"");
}

}  // namespace nkcp3
