#pragma once

#include "strided/array.hpp"
#include "strided/broadcast.hpp"
#include "strided/buffer.hpp"
#include "strided/counters.hpp"
#include "strided/dtype.hpp"
#include "strided/error.hpp"
#include "strided/format.hpp"
#include "strided/kernels.hpp"
#include "strided/pipelines.hpp"
#include "strided/storage.hpp"
#include "strided/value.hpp"
