#pragma once

#include <stdexcept>
#include <string>

namespace base_pulse {

// Bad parameters or preconditions. Maps to CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Chirp raster too coarse for the requested sweep.
class DiscretizationError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Waveform cannot be expressed in the requested shape format.
class UnsupportedShape : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// File could not be opened, written, or renamed. Maps to CLI exit code 3.
class IoError : public std::runtime_error {
public:
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}

    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// File was readable but its contents do not match the expected schema.
class FormatError : public IoError {
public:
    using IoError::IoError;
};

}  // namespace base_pulse
