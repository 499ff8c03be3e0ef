namespace fds {}
