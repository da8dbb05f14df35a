#pragma once

#include <stdexcept>
#include <string>

namespace lql {

// Base class for all library errors.  The `kind` string is stable and
// machine-checkable; `what()` carries the human-readable message.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

struct FieldMismatch : Error {
  explicit FieldMismatch(const std::string& m) : Error("FieldMismatch", m) {}
};

struct InverseOfZero : Error {
  explicit InverseOfZero(const std::string& m) : Error("InverseOfZero", m) {}
};

struct DomainMismatch : Error {
  explicit DomainMismatch(const std::string& m) : Error("DomainMismatch", m) {}
};

struct ArityMismatch : Error {
  explicit ArityMismatch(const std::string& m) : Error("ArityMismatch", m) {}
};

struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& m, std::string required)
      : Error("BudgetExceeded", m), required_count(std::move(required)) {}
  std::string required_count;
};

struct UnsupportedArity : Error {
  explicit UnsupportedArity(const std::string& m) : Error("UnsupportedArity", m) {}
};

struct SingularMatrix : Error {
  explicit SingularMatrix(const std::string& m) : Error("SingularMatrix", m) {}
};

struct ConjoinUnsupported : Error {
  explicit ConjoinUnsupported(const std::string& m) : Error("ConjoinUnsupported", m) {}
};

struct DegenerateQuadratic : Error {
  explicit DegenerateQuadratic(const std::string& m) : Error("DegenerateQuadratic", m) {}
};

struct InfiniteStateSpace : Error {
  explicit InfiniteStateSpace(const std::string& m) : Error("InfiniteStateSpace", m) {}
};

struct UpdateOutOfDomain : Error {
  explicit UpdateOutOfDomain(const std::string& m) : Error("UpdateOutOfDomain", m) {}
};

struct NonNumericStates : Error {
  explicit NonNumericStates(const std::string& m) : Error("NonNumericStates", m) {}
};

struct IrrationalSolution : Error {
  explicit IrrationalSolution(const std::string& m) : Error("IrrationalSolution", m) {}
};

struct InfiniteSolutionSet : Error {
  explicit InfiniteSolutionSet(const std::string& m) : Error("InfiniteSolutionSet", m) {}
};

// Parse- and validation-time errors carry a source position (1-based).
struct SyntaxError : Error {
  SyntaxError(const std::string& m, int line, int column)
      : Error("SyntaxError", "line " + std::to_string(line) + ", column " +
                                 std::to_string(column) + ": " + m),
        line(line), column(column) {}
  int line;
  int column;
};

struct UndeclaredIdentifier : Error {
  explicit UndeclaredIdentifier(const std::string& m) : Error("UndeclaredIdentifier", m) {}
};

struct DuplicateDeclaration : Error {
  explicit DuplicateDeclaration(const std::string& m) : Error("DuplicateDeclaration", m) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error("ValidationError", m) {}
};

// Command/mode incompatibilities (CLI exit code 3).
struct ModeIncompatibility : Error {
  explicit ModeIncompatibility(const std::string& m) : Error("ModeIncompatibility", m) {}
};

}  // namespace lql
