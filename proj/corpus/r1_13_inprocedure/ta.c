#include <string.h>
#include <tee_internal_api.h>

static uint8_t master_pin[32];

static void export_pin(TEE_Param p[4])
{
    TEE_MemMove(p[0].memref.buffer, master_pin, sizeof(master_pin));
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_MEMREF_OUTPUT,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    export_pin(params);
    return TEE_SUCCESS;
}
