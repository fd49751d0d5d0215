#pragma once

#include <stdexcept>
#include <string>

namespace advcongest {

enum class ErrorCode {
  empty_resources,
  non_positive_budget,
  negative_coefficient,
  non_positive_players,
  invalid_loads,
  empty_game,
  unoccupied_resource,
  same_resource,
  empty_source,
  invalid_alpha,
  no_unhappy_players,
  guard_exceeded,
  load_order_violated,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace advcongest
