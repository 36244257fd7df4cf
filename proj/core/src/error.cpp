#include "picklab/error.hpp"

namespace picklab {

const char* errc_name(Errc c)
{
    switch (c) {
    case Errc::dimension: return "dimension_error";
    case Errc::domain: return "domain_error";
    case Errc::divergence: return "divergence_error";
    case Errc::numeric: return "numeric_error";
    case Errc::regularity: return "regularity_error";
    case Errc::argument: return "argument_error";
    case Errc::budget: return "budget_error";
    case Errc::shape: return "shape_error";
    case Errc::path: return "path_error";
    case Errc::map: return "map_error";
    }
    return "error";
}

}  // namespace picklab
