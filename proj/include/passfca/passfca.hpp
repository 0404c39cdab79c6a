#pragma once

#include "passfca/basis_io.hpp"
#include "passfca/canonical_basis.hpp"
#include "passfca/context.hpp"
#include "passfca/context_io.hpp"
#include "passfca/errors.hpp"
#include "passfca/events.hpp"
#include "passfca/implication.hpp"
#include "passfca/index_set.hpp"
#include "passfca/ingest.hpp"
#include "passfca/patterns.hpp"
#include "passfca/pipeline.hpp"
#include "passfca/scaling.hpp"
#include "passfca/stages.hpp"
