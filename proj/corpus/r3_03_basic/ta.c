void *req = params[3].memref.buffer;

(void)req;
