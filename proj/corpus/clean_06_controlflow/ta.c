// variable assignment by shared memory value
unsigned int avail = params[2].memref.size;

if (avail < 16)
    return TEE_ERROR_SHORT_BUFFER;
