#pragma once

#include "tmlab/approx.hpp"
#include "tmlab/codec.hpp"
#include "tmlab/dovetail.hpp"
#include "tmlab/enumerate.hpp"
#include "tmlab/errors.hpp"
#include "tmlab/experiment.hpp"
#include "tmlab/machine.hpp"
#include "tmlab/simulate.hpp"
