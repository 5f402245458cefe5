char *dest = TEE_Malloc(params[1].memref.size, 0);
TEE_MemMove(dest, params[1].memref.buffer, params[1].memref.size);
