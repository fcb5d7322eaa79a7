#pragma once

// Umbrella header for the whole library.

#include "qbaf/attribution.hpp"
#include "qbaf/errors.hpp"
#include "qbaf/fixtures.hpp"
#include "qbaf/framework.hpp"
#include "qbaf/io.hpp"
#include "qbaf/properties.hpp"
#include "qbaf/semantics.hpp"
