#pragma once

#include <stdexcept>
#include <string>

namespace mrtarm {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define MRTARM_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
  public:                                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

MRTARM_DEFINE_ERROR(ParseError);
MRTARM_DEFINE_ERROR(GeometryError);
MRTARM_DEFINE_ERROR(PlacementError);
MRTARM_DEFINE_ERROR(CountMismatch);
MRTARM_DEFINE_ERROR(CapacityError);
MRTARM_DEFINE_ERROR(DegenerateSpace);
MRTARM_DEFINE_ERROR(Unreachable);
MRTARM_DEFINE_ERROR(NoVisibleNode);
MRTARM_DEFINE_ERROR(NonAdjacentSequence);
MRTARM_DEFINE_ERROR(StuckSchedule);
MRTARM_DEFINE_ERROR(Timeout);

#undef MRTARM_DEFINE_ERROR

}  // namespace mrtarm
