#pragma once

#include "fragmark/analysis.h"
#include "fragmark/codec.h"
#include "fragmark/errors.h"
#include "fragmark/experiment.h"
#include "fragmark/image.h"
#include "fragmark/keys.h"
#include "fragmark/mapping.h"
#include "fragmark/pgm_io.h"
#include "fragmark/protocol.h"
#include "fragmark/rng.h"
