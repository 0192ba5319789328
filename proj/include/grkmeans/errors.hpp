#ifndef GRKMEANS_ERRORS_HPP
#define GRKMEANS_ERRORS_HPP

#include <stdexcept>
#include <string>

/**
 * @file errors.hpp
 *
 * @brief Exception types raised by the library.
 */

namespace grkmeans {

/**
 * Malformed or invalid input data: unparseable CSV rows, non-finite values,
 * labels out of range, inconsistent shapes.
 */
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * The data are valid but carry no usable information for the requested
 * computation, e.g. every feature column is constant.
 */
class DegenerateDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}

#endif
