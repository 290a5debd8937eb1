#pragma once

#include <stdexcept>
#include <string>

namespace qtl {

// Every failure raised by the library derives from Error so that callers
// (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QTL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

QTL_DEFINE_ERROR(DivisionByZero);
QTL_DEFINE_ERROR(FieldMismatch);
QTL_DEFINE_ERROR(ParseError);
QTL_DEFINE_ERROR(InvalidSpec);
QTL_DEFINE_ERROR(MalformedBasisKey);
QTL_DEFINE_ERROR(ExponentNotInR);
QTL_DEFINE_ERROR(NotGeneric);
QTL_DEFINE_ERROR(InvalidModuleData);
QTL_DEFINE_ERROR(InvalidRepresentation);
QTL_DEFINE_ERROR(SplittingNeedsFieldExtension);
QTL_DEFINE_ERROR(NotIrreducible);
QTL_DEFINE_ERROR(OutOfBox);
QTL_DEFINE_ERROR(DegreeBoundViolated);
QTL_DEFINE_ERROR(ConstantTermMismatch);
QTL_DEFINE_ERROR(RelationViolated);
QTL_DEFINE_ERROR(DimensionMismatch);
QTL_DEFINE_ERROR(IOFailure);

#undef QTL_DEFINE_ERROR

}  // namespace qtl
