#include <string.h>
#include <tee_internal_api.h>

static uint8_t master_nonce[32];

static void export_nonce(TEE_Param p[4])
{
    TEE_MemMove(p[1].memref.buffer, master_nonce, sizeof(master_nonce));
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_MEMREF_OUTPUT,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    export_nonce(params);
    return TEE_SUCCESS;
}
