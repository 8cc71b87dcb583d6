#pragma once

// Everything except serialize.hpp, which needs json.hpp on the include path.
#include "thompson/annular.hpp"
#include "thompson/canonical.hpp"
#include "thompson/closed_diagram.hpp"
#include "thompson/closed_v.hpp"
#include "thompson/error.hpp"
#include "thompson/oracle.hpp"
#include "thompson/port_graph.hpp"
#include "thompson/rewrite.hpp"
#include "thompson/strand_diagram.hpp"
#include "thompson/toral.hpp"
#include "thompson/word.hpp"
