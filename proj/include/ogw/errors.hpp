#pragma once

#include <stdexcept>
#include <string>

namespace ogw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define OGW_ERROR(Name)                                   \
  struct Name : Error {                                   \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

OGW_ERROR(BudgetExhausted);
OGW_ERROR(OracleDomainError);
OGW_ERROR(MismatchedOrder);
OGW_ERROR(UnknownId);
OGW_ERROR(ArityMismatch);
OGW_ERROR(NoLimit);
OGW_ERROR(BadCertificate);
OGW_ERROR(Uncertified);
OGW_ERROR(MalformedMap);
OGW_ERROR(ParseError);
OGW_ERROR(AssertionFailure);

#undef OGW_ERROR

}  // namespace ogw
