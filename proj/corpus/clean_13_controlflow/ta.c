#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_MEMREF_INPUT);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    char buf[64];
    uint32_t len = params[3].memref.size;

    if (len > sizeof(buf))
        return TEE_ERROR_SHORT_BUFFER;
    TEE_MemMove(buf, params[3].memref.buffer, len);
    return TEE_SUCCESS;
}
