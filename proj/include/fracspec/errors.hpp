#ifndef FRACSPEC_ERRORS_HPP
#define FRACSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracspec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FRACSPEC_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(std::string(#Name ": ") + what) {} \
  }

FRACSPEC_DEFINE_ERROR(NotASublattice);
FRACSPEC_DEFINE_ERROR(BadSection);
FRACSPEC_DEFINE_ERROR(UnknownDigit);
FRACSPEC_DEFINE_ERROR(NotEmbeddable);
FRACSPEC_DEFINE_ERROR(UnsupportedGeometry);
FRACSPEC_DEFINE_ERROR(NotExpansive);
FRACSPEC_DEFINE_ERROR(DepthTooLarge);
FRACSPEC_DEFINE_ERROR(BudgetExceeded);
FRACSPEC_DEFINE_ERROR(IdenticalPoints);
FRACSPEC_DEFINE_ERROR(CollisionDetected);
FRACSPEC_DEFINE_ERROR(MemberOfSpectrum);
FRACSPEC_DEFINE_ERROR(ParseError);
FRACSPEC_DEFINE_ERROR(IOError);

#undef FRACSPEC_DEFINE_ERROR

}  // namespace fracspec

#endif  // FRACSPEC_ERRORS_HPP
