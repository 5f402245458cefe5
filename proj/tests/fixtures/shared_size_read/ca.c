TEEC_SharedMemory shm = { .size = 64, .flags = TEEC_MEM_INPUT };
TEEC_AllocateSharedMemory(&ctx, &shm);
op.paramTypes = TEEC_PARAM_TYPES(TEEC_NONE, TEEC_NONE, TEEC_NONE, TEEC_MEMREF_WHOLE);
op.params[3].memref.parent = &shm;
res = TEEC_InvokeCommand(&sess, CMD_PEEK, &op, &err_origin);
