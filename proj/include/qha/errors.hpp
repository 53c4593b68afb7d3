#pragma once

#include <stdexcept>
#include <string>

namespace qha {

// Base class for every library error; `kind()` is the stable name used in reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define QHA_ERROR(Name)                                              \
  struct Name : Error {                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

QHA_ERROR(DivisionByZero);
QHA_ERROR(GroupMismatch);
QHA_ERROR(BudgetExceeded);
QHA_ERROR(NotRootOfUnityValued);
QHA_ERROR(NonAbelianParams);
QHA_ERROR(NotCartan);
QHA_ERROR(NotFiniteType);
QHA_ERROR(UnsupportedRecursion);
QHA_ERROR(UnsupportedType);
QHA_ERROR(InvalidFactoryParams);
QHA_ERROR(GammaViolation);
QHA_ERROR(BuildRejected);
QHA_ERROR(DimensionMismatch);
QHA_ERROR(NotDoubledDatum);
QHA_ERROR(NonInvertibleBeta);
QHA_ERROR(DoesNotDescend);
QHA_ERROR(SchemaError);

#undef QHA_ERROR

}  // namespace qha
