#include "ncdt/cli.hpp"
