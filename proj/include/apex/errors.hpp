#pragma once

#include <stdexcept>
#include <string>

namespace apex {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define APEX_DEFINE_ERROR(NAME)                                        \
    struct NAME : Error {                                              \
        explicit NAME(const std::string& msg = #NAME) : Error(msg) {}  \
    }

// geometry
APEX_DEFINE_ERROR(DegenerateInput);
APEX_DEFINE_ERROR(InvalidWindow);
APEX_DEFINE_ERROR(TooFewPoints);
APEX_DEFINE_ERROR(InvalidSpacing);
APEX_DEFINE_ERROR(EmptyIndex);

// qp
APEX_DEFINE_ERROR(DimensionMismatch);
APEX_DEFINE_ERROR(NonConvex);

// simworld
APEX_DEFINE_ERROR(InvalidState);
APEX_DEFINE_ERROR(SelfIntersecting);
APEX_DEFINE_ERROR(AgentFailure);

// perception
APEX_DEFINE_ERROR(InvalidFov);
APEX_DEFINE_ERROR(DegenerateConfiguration);
APEX_DEFINE_ERROR(EmptyMask);
APEX_DEFINE_ERROR(EmptyView);

// ftg
APEX_DEFINE_ERROR(NoGap);

// mpc
APEX_DEFINE_ERROR(ViewTooShort);

// mapping
APEX_DEFINE_ERROR(IncompleteLap);
APEX_DEFINE_ERROR(MatchDistanceExceeded);

// localize
APEX_DEFINE_ERROR(FilterCollapse);
APEX_DEFINE_ERROR(EmptyObservation);

// harness
APEX_DEFINE_ERROR(MapMissing);
APEX_DEFINE_ERROR(MalformedTelemetry);
APEX_DEFINE_ERROR(ConfigError);

#undef APEX_DEFINE_ERROR

}  // namespace apex
