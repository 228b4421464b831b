#pragma once

#include <stdexcept>
#include <string>

namespace hdaforge {

enum class errc {
  interface_mismatch,
  not_interval,
  invalid_ipomset,
  bound_exceeded,
  unknown_cell,
  index_out_of_range,
  precondition_violated,
  not_bad_starter,
  not_reduced,
  not_an_inclusion_edge,
  merge_undefined,
  syntax_error,
  schema_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::interface_mismatch: return "InterfaceMismatch";
    case errc::not_interval: return "NotInterval";
    case errc::invalid_ipomset: return "InvalidIpomset";
    case errc::bound_exceeded: return "BoundExceeded";
    case errc::unknown_cell: return "UnknownCell";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::not_bad_starter: return "NotBadStarter";
    case errc::not_reduced: return "NotReduced";
    case errc::not_an_inclusion_edge: return "NotAnInclusionEdge";
    case errc::merge_undefined: return "MergeUndefined";
    case errc::syntax_error: return "SyntaxError";
    case errc::schema_error: return "SchemaError";
  }
  return "Error";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace hdaforge
