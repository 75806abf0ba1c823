#pragma once

#include "witnesslab/canonical_forms.hpp"
#include "witnesslab/concurrence.hpp"
#include "witnesslab/errors.hpp"
#include "witnesslab/lie_rep.hpp"
#include "witnesslab/sampling.hpp"
#include "witnesslab/state_io.hpp"
#include "witnesslab/system_spec.hpp"
#include "witnesslab/tensor_core.hpp"
#include "witnesslab/witness.hpp"
