void *shm = params[1].memref.buffer;

(void)shm;
