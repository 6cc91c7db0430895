#ifndef OPMINE_ERROR_HPP
#define OPMINE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace opmine {

// Every failure carries a stable machine-readable code (e.g. "MissingField",
// "BadTimestamp") plus a human-readable detail. The CLI prints
// "error: <code>: <detail>" on one line and maps the code to an exit status.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace opmine

#endif  // OPMINE_ERROR_HPP
