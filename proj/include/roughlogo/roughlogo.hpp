#ifndef ROUGHLOGO_ROUGHLOGO_HPP
#define ROUGHLOGO_ROUGHLOGO_HPP

#include "roughlogo/degrade.hpp"
#include "roughlogo/error.hpp"
#include "roughlogo/evaluation.hpp"
#include "roughlogo/featuredb.hpp"
#include "roughlogo/image_io.hpp"
#include "roughlogo/kdindex.hpp"
#include "roughlogo/matcher.hpp"
#include "roughlogo/raster.hpp"
#include "roughlogo/reduct.hpp"
#include "roughlogo/render.hpp"
#include "roughlogo/retrieval.hpp"
#include "roughlogo/rough_cover.hpp"
#include "roughlogo/synth.hpp"

#endif  // ROUGHLOGO_ROUGHLOGO_HPP
