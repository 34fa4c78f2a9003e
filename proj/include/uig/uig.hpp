#pragma once

#include "uig/adj.hpp"
#include "uig/audit.hpp"
#include "uig/bitbuf.hpp"
#include "uig/cellprobe.hpp"
#include "uig/core.hpp"
#include "uig/deg.hpp"
#include "uig/io.hpp"
#include "uig/spill.hpp"
