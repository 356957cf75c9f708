#ifndef LPA_ERROR_HPP
#define LPA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lpa {

// All domain errors carry a stable kind tag ("NotATree", "DivisionByZero", ...)
// so callers and tests can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw Error(kind, msg);
}

} // namespace lpa

#endif
