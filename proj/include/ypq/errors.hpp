#pragma once

#include <stdexcept>
#include <string>

namespace ypq {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define YPQ_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

YPQ_DEFINE_ERROR(SingularMetric);
YPQ_DEFINE_ERROR(DegreeMismatch);
YPQ_DEFINE_ERROR(DegreeOverflow);
YPQ_DEFINE_ERROR(NotKilling);
YPQ_DEFINE_ERROR(OutOfChart);
YPQ_DEFINE_ERROR(NotCoprime);
YPQ_DEFINE_ERROR(OutOfRange);
YPQ_DEFINE_ERROR(DomainError);
YPQ_DEFINE_ERROR(NewtonDivergence);
YPQ_DEFINE_ERROR(PoleSingularity);
YPQ_DEFINE_ERROR(StepFailure);
YPQ_DEFINE_ERROR(ChartExit);
YPQ_DEFINE_ERROR(ConfigError);

#undef YPQ_DEFINE_ERROR

}  // namespace ypq
