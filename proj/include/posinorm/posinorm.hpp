#pragma once

// Convenience umbrella: pulls in the whole toolkit.

#include "posinorm/numeric.hpp"
#include "posinorm/douglas.hpp"
#include "posinorm/classes.hpp"
#include "posinorm/chains.hpp"
#include "posinorm/shifts.hpp"
#include "posinorm/gallery.hpp"
#include "posinorm/harness.hpp"
#include "posinorm/io.hpp"
