#ifndef KANNUDI_KANNUDI_HPP
#define KANNUDI_KANNUDI_HPP

#include "kannudi/analyzer.hpp"
#include "kannudi/composer.hpp"
#include "kannudi/keymap.hpp"
#include "kannudi/phonology.hpp"
#include "kannudi/script.hpp"
#include "kannudi/utf8.hpp"

#endif  // KANNUDI_KANNUDI_HPP
