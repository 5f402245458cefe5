char out[16];
op.paramTypes = TEEC_PARAM_TYPES(TEEC_NONE, TEEC_MEMREF_TEMP_OUTPUT, TEEC_NONE, TEEC_NONE);
op.params[1].tmpref.buffer = out;
op.params[1].tmpref.size = sizeof(out);
res = TEEC_InvokeCommand(&sess, CMD_KEY, &op, &err_origin);
