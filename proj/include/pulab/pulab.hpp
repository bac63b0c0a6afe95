#pragma once

#include "pulab/body.hpp"
#include "pulab/body_json.hpp"
#include "pulab/error.hpp"
#include "pulab/experiments.hpp"
#include "pulab/profile.hpp"
#include "pulab/quadrature.hpp"
#include "pulab/report.hpp"
#include "pulab/rng.hpp"
#include "pulab/sampler.hpp"
#include "pulab/sequence.hpp"
#include "pulab/stats.hpp"
#include "pulab/version.hpp"
#include "pulab/volume.hpp"
#include "pulab/young.hpp"
