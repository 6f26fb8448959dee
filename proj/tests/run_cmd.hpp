#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

// runs a shell command, captures its stdout, returns the exit code
struct CmdResult {
    int exit_code;
    std::string out;
};

inline CmdResult run_cmd(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("popen failed for: " + cmd);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, n);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}
