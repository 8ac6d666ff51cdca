#pragma once

#include "harmap/core.hpp"
#include "harmap/report.hpp"
#include "harmap/criteria.hpp"
#include "harmap/structural.hpp"
#include "harmap/distortion.hpp"
#include "harmap/constructor.hpp"
#include "harmap/oracle.hpp"
#include "harmap/gallery.hpp"
#include "harmap/io.hpp"
#include "harmap/render.hpp"
