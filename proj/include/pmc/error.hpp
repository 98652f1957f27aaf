#ifndef PMC_ERROR_HPP
#define PMC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pmc {

// Base for all workbench errors so callers can catch everything at once.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

struct NotRational : Error {
  explicit NotRational(const std::string& msg) : Error(msg) {}
};

// Sign certification hit the precision cap while the enclosure still
// straddled zero. For nonzero field elements this cannot happen; seeing it
// means the input was zero or the cap is absurdly low.
struct ZeroSuspected : Error {
  explicit ZeroSuspected(const std::string& msg) : Error(msg) {}
};

struct CapExceeded : Error {
  explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

}  // namespace pmc

#endif
