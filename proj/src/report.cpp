#include "pseq/report.hpp"

namespace pseq {

void Report::add(std::string name, Json lhs, Json rhs, bool pass) {
  checks.push_back({std::move(name), std::move(lhs), std::move(rhs), pass});
}

void Report::append(const Report& other, const std::string& prefix) {
  for (const Check& c : other.checks) checks.push_back({prefix + c.name, c.lhs, c.rhs, c.pass});
  for (const std::string& n : other.notes) notes.push_back(prefix + n);
}

std::size_t Report::failed() const {
  std::size_t n = 0;
  for (const Check& c : checks) n += c.pass ? 0 : 1;
  return n;
}

Json Report::to_json() const {
  Json list = Json::array();
  for (const Check& c : checks) list.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  return {{"suite", suite},
          {"checks", list},
          {"notes", notes},
          {"summary", {{"total", checks.size()}, {"passed", checks.size() - failed()}, {"failed", failed()},
                       {"pass", all_pass()}}}};
}

}  // namespace pseq
