#pragma once

#include <stdexcept>
#include <string>

namespace mapfpp {

#define MAPFPP_ERROR(Name, Base)                                   \
    struct Name : Base {                                           \
        explicit Name(const std::string& what) : Base(what) {}    \
    };

// map construction
MAPFPP_ERROR(TwinFixedPoint, std::invalid_argument)
MAPFPP_ERROR(DuplicateHalfEdge, std::invalid_argument)
MAPFPP_ERROR(Disconnected, std::invalid_argument)
MAPFPP_ERROR(NonPlanar, std::invalid_argument)
MAPFPP_ERROR(EmptySourceSet, std::invalid_argument)
MAPFPP_ERROR(WeightOutOfRange, std::invalid_argument)
MAPFPP_ERROR(FormatError, std::runtime_error)

// trees and laws
MAPFPP_ERROR(HeightExceedsDepth, std::invalid_argument)
MAPFPP_ERROR(InvalidPMF, std::invalid_argument)

// bijections
MAPFPP_ERROR(NotQuadrangulation, std::invalid_argument)
MAPFPP_ERROR(NotBipartite, std::invalid_argument)
MAPFPP_ERROR(OddRadius, std::invalid_argument)

// hulls and skeletons
MAPFPP_ERROR(RadiusTooLarge, std::invalid_argument)
MAPFPP_ERROR(NoCycle, std::runtime_error)
MAPFPP_ERROR(NotCylinder, std::runtime_error)
MAPFPP_ERROR(PerimeterMismatch, std::invalid_argument)

// half-plane windows
MAPFPP_ERROR(WindowTooSmall, std::runtime_error)
MAPFPP_ERROR(SlotPoolExhausted, std::runtime_error)
MAPFPP_ERROR(NoFullHeightTree, std::runtime_error)

// experiments
MAPFPP_ERROR(ConfigError, std::invalid_argument)

#undef MAPFPP_ERROR

}  // namespace mapfpp
