#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "crgeom/algebra/matrix.hpp"
#include "crgeom/exterior/form.hpp"

namespace crgeom::ph {

/// One verified identity. Exact checks pass iff the residual is zero.
struct ReportEntry {
  std::string identity;
  bool pass = false;
  nlohmann::json residual;
};

class Report {
 public:
  void add(std::string identity, const exterior::Form& residual);
  void add(std::string identity, const algebra::Coeff& residual);
  void add(std::string identity, const algebra::CoeffMatrix& residual);
  void add(std::string identity, bool pass, nlohmann::json residual);
  void append(const Report& other);

  const std::vector<ReportEntry>& entries() const { return entries_; }
  bool all_pass() const;
  const ReportEntry* find(const std::string& identity) const;
  nlohmann::json to_json() const;

 private:
  std::vector<ReportEntry> entries_;
};

}  // namespace crgeom::ph
