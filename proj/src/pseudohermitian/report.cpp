#include "crgeom/pseudohermitian/report.hpp"

#include "crgeom/exterior/serialize.hpp"

namespace crgeom::ph {

void Report::add(std::string identity, const exterior::Form& residual) {
  entries_.push_back({std::move(identity), residual.is_zero(), exterior::form_to_json(residual)});
}

void Report::add(std::string identity, const algebra::Coeff& residual) {
  entries_.push_back({std::move(identity), residual.is_zero(), residual.to_string()});
}

void Report::add(std::string identity, const algebra::CoeffMatrix& residual) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < residual.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < residual.cols(); ++c) row.push_back(residual(r, c).to_string());
    rows.push_back(row);
  }
  entries_.push_back({std::move(identity), residual.is_zero(), rows});
}

void Report::add(std::string identity, bool pass, nlohmann::json residual) {
  entries_.push_back({std::move(identity), pass, std::move(residual)});
}

void Report::append(const Report& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool Report::all_pass() const {
  for (const auto& e : entries_)
    if (!e.pass) return false;
  return true;
}

const ReportEntry* Report::find(const std::string& identity) const {
  for (const auto& e : entries_)
    if (e.identity == identity) return &e;
  return nullptr;
}

nlohmann::json Report::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries_)
    arr.push_back({{"identity", e.identity}, {"status", e.pass ? "exact-pass" : "fail"}, {"residual", e.residual}});
  return arr;
}

}  // namespace crgeom::ph
