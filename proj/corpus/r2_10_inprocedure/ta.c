#include <string.h>
#include <tee_internal_api.h>

static void load_blob(TEE_Param p[4])
{
    uint8_t blob[512];

    TEE_MemMove(blob, p[0].memref.buffer, p[0].memref.size);
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_MEMREF_INPUT,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    load_blob(params);
    return TEE_SUCCESS;
}
