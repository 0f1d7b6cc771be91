package com.example.shop;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.After;
import org.junit.Before;
import org.junit.Test;

public class ReceiptPrinterTest {
    private PriceService prices;
    private Customer customer;
    private ReceiptPrinter printer;

    @Before
    public void setUp() {
        prices = mock(PriceService.class);
        customer = mock(Customer.class);
        stubPrices_nostub1();
        when(customer.getName()).thenReturn("Eve");
        printer = new ReceiptPrinter(prices);
    }

    @After
    public void tearDown() {
        printer = null;
    }

    @Test
    public void printsHeader() {
        assertEquals("Receipt for Eve in USD", printer.header(customer));
    }

    @Test
    public void printsHeaderTwice() {
        printer.header(customer);
        assertEquals("Receipt for Eve in USD", printer.header(customer));
    }

    private void stubPrices_nostub1() {
        when(prices.currency()).thenReturn("USD");
    }
}
