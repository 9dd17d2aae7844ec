#ifndef RBDA_ERROR_HPP
#define RBDA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rbda {

enum class ErrorKind {
  schema,          // document shape: missing key, wrong type
  invariant,       // a named domain invariant is violated
  reference,       // dangling cross-reference between identifiers
  duplicate,       // identifier repeated where it must be unique
  domain,          // numeric argument outside the function's domain
  stage,           // session stage-order violation
  not_found,       // unknown session
  degenerate_conditioning,
  unbounded,
  numerical,
  io,
  usage,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library. `where` holds a JSON field path
/// for document errors and the violated rule name for invariant errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string where, const std::string& message)
      : std::runtime_error(message), kind_(kind), where_(std::move(where)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::string where_;
};

}  // namespace rbda

#endif  // RBDA_ERROR_HPP
