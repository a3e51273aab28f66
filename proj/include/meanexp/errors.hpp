#pragma once

#include <stdexcept>
#include <string>

namespace meanexp {

enum class Errc {
  domain,
  empty_range,
  degenerate,
  not_implemented,
  infeasible,
  needs_larger_enumeration,
  inconsistent,
  inapplicable,
  range,
  missing_parameter,
  schema,
  internal
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::domain: return "domain";
    case Errc::empty_range: return "empty_range";
    case Errc::degenerate: return "degenerate";
    case Errc::not_implemented: return "not_implemented";
    case Errc::infeasible: return "infeasible";
    case Errc::needs_larger_enumeration: return "needs_larger_enumeration";
    case Errc::inconsistent: return "inconsistent";
    case Errc::inapplicable: return "inapplicable";
    case Errc::range: return "range";
    case Errc::missing_parameter: return "missing_parameter";
    case Errc::schema: return "schema";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace meanexp
