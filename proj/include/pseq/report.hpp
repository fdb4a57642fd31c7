#pragma once

#include "pseq/config.hpp"

#include <string>
#include <vector>

namespace pseq {

struct Check {
  std::string name;
  Json lhs;
  Json rhs;
  bool pass = false;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  void add(std::string name, Json lhs, Json rhs, bool pass);
  void note(std::string text) { notes.push_back(std::move(text)); }
  void append(const Report& other, const std::string& prefix);

  std::size_t failed() const;
  bool all_pass() const { return failed() == 0; }
  Json to_json() const;
};

}  // namespace pseq
