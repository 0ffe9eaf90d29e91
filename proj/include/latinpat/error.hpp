#pragma once

#include <stdexcept>
#include <string>

namespace latinpat {

enum class Errc {
  NotSquare,
  SymbolOutOfRange,
  DuplicateInRow,
  DuplicateInColumn,
  InvalidPattern,
  TooLarge,
  IdOutOfRange,
  ZeroSamples,
  UnbalancedClassVector,
  QuadrantLengthNotDivisibleBy4,
  InvalidLatinon,
  EnumerationBoundExceeded,
  MissingPattern,
  NotEliminable,
  Parse,
  InvalidArgument,
};

const char* errc_name(Errc code);

// All library failures are reported with this exception. `row`/`col` are
// 1-based and only meaningful for the Latin square validation codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, int row = 0, int col = 0)
      : std::runtime_error(what), code_(code), row_(row), col_(col) {}

  Errc code() const noexcept { return code_; }
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

 private:
  Errc code_;
  int row_;
  int col_;
};

}  // namespace latinpat
