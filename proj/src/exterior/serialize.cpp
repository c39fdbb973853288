#include "crgeom/exterior/serialize.hpp"

#include <bit>

#include "crgeom/algebra/parser.hpp"
#include "crgeom/error.hpp"

namespace crgeom::exterior {

nlohmann::json form_to_json(const Form& w) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mask, c] : w.components()) {
    nlohmann::json index = nlohmann::json::array();
    for (std::uint32_t m = mask; m; m &= m - 1) index.push_back(basis_name(w.arity(), std::countr_zero(m)));
    terms.push_back({{"index", index}, {"coeff", c.to_string()}});
  }
  return {{"degree", w.degree()}, {"terms", terms}};
}

Form form_from_json(const nlohmann::json& j, int arity) {
  Form w(arity, j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) {
    std::uint32_t mask = 0;
    int sign = 1;
    std::vector<int> seen;
    for (const auto& name : t.at("index")) {
      int k = -1;
      for (int c = 0; c < basis_size(arity); ++c)
        if (basis_name(arity, c) == name.get<std::string>()) k = c;
      if (k < 0) throw Error(Errc::parse_error, "unknown basis covector " + name.get<std::string>());
      for (int prev : seen) {
        if (prev == k) throw Error(Errc::parse_error, "repeated basis covector");
        if (prev > k) sign = -sign;
      }
      seen.push_back(k);
      mask |= 1u << k;
    }
    algebra::Coeff c = algebra::parse_expr(t.at("coeff").get<std::string>(), arity);
    w.add_term(mask, sign < 0 ? -c : c);
  }
  return w;
}

nlohmann::json field_to_json(const VectorField& x) {
  nlohmann::json comps = nlohmann::json::object();
  for (int k = 0; k < x.size(); ++k) {
    if (x[k].is_zero()) continue;
    comps["d_" + basis_name(x.arity(), k).substr(1)] = x[k].to_string();
  }
  return comps;
}

}  // namespace crgeom::exterior
