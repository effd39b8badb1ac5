#pragma once

namespace ncdt {}
